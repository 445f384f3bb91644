#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "focklab/errors.hpp"
#include "focklab/radial_bergman.hpp"
#include "focklab/special_fn.hpp"

using namespace focklab;
using namespace focklab::radial;

TEST_CASE("moment table examples") {
  CHECK(std::exp(moments(1, 0.0, 1.0, 5).log_moments()[3]) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(std::exp(moments(2, 0.0, 1.0, 0).log_moments()[0]) ==
        doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-15));
  CHECK(std::exp(moments(1, 1.0, 1.0, 2).log_moments()[2]) == doctest::Approx(6.0).epsilon(1e-14));
  const auto t = moments(3, 0.5, 2.0, 4);
  CHECK(t.max_index() == 4);
  CHECK(t.log_moment(100) == doctest::Approx(-(101.5 / 3.0) * std::log(2.0) +
                                             std::lgamma(101.5 / 3.0) - std::log(3.0))
                                 .epsilon(1e-14));
  CHECK_THROWS_AS(moments(0, 0.0, 1.0, 3), DomainError);
  CHECK_THROWS_AS(moments(1, -1.0, 1.0, 3), DomainError);
  CHECK_THROWS_AS(moments(1, 0.0, 0.0, 3), DomainError);
}

TEST_CASE("moment recurrence m_{j+k} / m_j = (j + c + 1) / (a k)") {
  for (int k = 1; k <= 4; ++k) {
    for (double c : {-0.5, 0.0, 1.0, 2.5}) {
      for (double a : {0.5, 1.0, 3.0}) {
        const auto t = moments(k, c, a, 60);
        for (int j = 0; j + k <= 60; ++j) {
          const double ratio = std::exp(t.log_moments()[j + k] - t.log_moments()[j]);
          CHECK(std::abs(ratio - (j + c + 1) / (a * k)) <= 1e-12 * ratio);
        }
      }
    }
  }
}

TEST_CASE("1 / m_0 matches direct quadrature of the weight") {
  boost::math::quadrature::exp_sinh<double> integrator;
  for (int k = 1; k <= 3; ++k) {
    for (double c : {-0.5, 0.0, 1.0}) {
      for (double a : {0.5, 1.0, 2.0}) {
        CAPTURE(k);
        CAPTURE(c);
        CAPTURE(a);
        const double mass = integrator.integrate(
            [&](double r) {
              return 2.0 * std::exp((2 * c + 1) * std::log(r) - a * std::pow(r, 2 * k));
            },
            1e-14);
        const double m0 = std::exp(moments(k, c, a, 0).log_moments()[0]);
        CHECK(std::abs(1.0 / m0 - 1.0 / mass) <= 1e-10 / mass);
      }
    }
  }
}

TEST_CASE("R_0 examples") {
  // Each damped term carries a rounding error proportional to its log size.
  for (double r : {0.0, 0.3, 1.0, 4.0, 20.0}) {
    CHECK(bergman_function_r0(1, 0.0, 1.0, r) == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (double r : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    CHECK(bergman_function_r0(1, 1.0, 1.0, r) ==
          doctest::Approx(-std::expm1(-r * r)).epsilon(1e-13));
  }
  CHECK(bergman_function_r0(1, 1.0, 1.0, 1.0) == doctest::Approx(0.6321205588285577).epsilon(1e-14));
  CHECK(bergman_function_r0(1, 1.0, 2.0, 1.0) == doctest::Approx(1.7293294335267746).epsilon(1e-14));
  CHECK(bergman_function_r0(1, 1.0, 1.0, 0.0) == 0.0);
  CHECK_THROWS_AS(bergman_function_r0(1, -0.5, 1.0, 0.0), DivergenceError);
}

TEST_CASE("amplitude scaling R_0^{(a)}(r) = a R_0^{(1)}(sqrt(a) r) for k = 1") {
  for (double c : {-0.5, 0.0, 0.7}) {
    for (double a : {0.5, 2.0, 5.0}) {
      for (double r : {0.2, 0.9, 1.7}) {
        CHECK(bergman_function_r0(1, c, a, r) ==
              doctest::Approx(a * bergman_function_r0(1, c, 1.0, std::sqrt(a) * r)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("a = 1 agrees with the scaled Mittag-Leffler kernel") {
  for (int k = 1; k <= 3; ++k) {
    for (double c : {-0.5, 0.0, 1.5}) {
      for (double r : {0.05, 0.5, 1.0, 1.5, 2.5}) {
        CHECK(bergman_function_r0(k, c, 1.0, r) ==
              doctest::Approx(special_fn::ml_kernel_scaled(k, c, r)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("small-r law R_0(r) / r^{2c} -> 1 / m_0") {
  const double r = 1e-3;
  for (double c : {-0.5, 0.0, 1.0}) {
    const double m0 = std::exp(moments(1, c, 1.0, 0).log_moments()[0]);
    CHECK(std::abs(bergman_function_r0(1, c, 1.0, r) / std::pow(r, 2 * c) - 1.0 / m0) <= 1e-6);
  }
  // For k = 2 the first correction r^2 / m_1 is about 2e-6 at r = 1e-3; it is
  // the only term above 1e-9.
  for (double c : {-0.5, 0.0, 1.0}) {
    const auto t = moments(2, c, 1.0, 1);
    const double m0 = std::exp(t.log_moments()[0]);
    const double m1 = std::exp(t.log_moments()[1]);
    const double dev = bergman_function_r0(2, c, 1.0, r) / std::pow(r, 2 * c) - 1.0 / m0;
    CHECK(std::abs(dev - r * r / m1) <= 1e-9);
  }
}

TEST_CASE("R_0 is strictly positive away from the origin") {
  for (int k = 1; k <= 4; ++k) {
    for (double c : {-0.9, 0.0, 3.0}) {
      for (double r = 0.01; std::pow(r, 2 * k) < 1000.0; r += 0.07) {
        CHECK(bergman_function_r0(k, c, 1.0, r) > 0.0);
      }
    }
  }
}

TEST_CASE("truncated series increases to R_0") {
  double prev = 0.0;
  for (long terms = 1; terms <= 80; ++terms) {
    const double v = truncated_r0(2, 0.5, 1.0, 1.6, terms);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(prev == doctest::Approx(bergman_function_r0(2, 0.5, 1.0, 1.6)).epsilon(1e-14));
}

TEST_CASE("laplacian of a r^{2k}") {
  CHECK(laplacian_q0(1, 1.0, 3.0) == 1.0);
  CHECK(laplacian_q0(2, 0.5, 2.0) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(laplacian_q0(3, 1.0, 1.5) == doctest::Approx(9.0 * std::pow(1.5, 4)).epsilon(1e-15));
}

namespace {

std::vector<double> grid_in_u(int k, double a, double u_lo, double u_hi, int n) {
  std::vector<double> r;
  for (int i = 0; i < n; ++i) {
    const double u = u_lo + (u_hi - u_lo) * i / (n - 1);
    r.push_back(std::pow(u / a, 1.0 / (2 * k)));
  }
  return r;
}

}  // namespace

TEST_CASE("decay report: c = 1 Ginibre has rel_err = -e^{-r^2}") {
  // Beyond u ~ 20 the double value of R_0 - 1 loses too many digits for a
  // 1e-6 slope check.
  const auto grid = grid_in_u(1, 1.0, 1.0, 20.0, 20);
  const auto rep = thm1_decay_report(1, 1.0, 1.0, grid);
  CHECK_FALSE(rep.identically_zero);
  CHECK(rep.sign_consistent);
  CHECK(std::abs(rep.slope + 1.0) <= 1e-6);
  CHECK(std::abs(rep.prefactor_exponent) <= 1e-5);
  CHECK(rep.alpha == doctest::Approx(-rep.slope));
  for (const auto& p : rep.points) {
    CHECK(std::abs(p.rel_err + std::exp(-p.r * p.r)) <= 1e-14 + 1e-12 * std::exp(-p.r * p.r));
  }
}

TEST_CASE("decay report: flat Ginibre is identically zero") {
  const auto rep = thm1_decay_report(1, 0.0, 1.0, grid_in_u(1, 1.0, 1.0, 30.0, 12));
  CHECK(rep.identically_zero);
  CHECK(rep.used_points == 0);
}

TEST_CASE("decay report rejects grids outside the measurable window") {
  CHECK_THROWS_AS(thm1_decay_report(1, 1.0, 1.0, std::vector<double>{0.5, 1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(thm1_decay_report(1, 1.0, 1.0, std::vector<double>{2.0, 1.5, 1.2}), DomainError);
  CHECK_THROWS_AS(thm1_decay_report(1, 1.0, 1.0, std::vector<double>{1.0, 6.0}), DomainError);
}

TEST_CASE("decay fit on extended-precision fixture values, k = 2") {
  // R_0 = 2 r^{2c} E_{1/2,(1+c)/2}(r^2) e^{-r^4}.
  std::vector<double> r, vals;
  for (const auto& row : testing::mittag_leffler_rows()) {
    if (row.a != 0.5 || row.b != 0.5 || row.x < 2.0 || row.x > 5.0) continue;
    if (!r.empty() && std::sqrt(row.x) == r.back()) continue;
    r.push_back(std::sqrt(row.x));
    vals.push_back(2.0 * row.value * std::exp(-row.x * row.x));
  }
  REQUIRE(r.size() >= 4);
  const auto rep = fit_decay(2, 0.0, 1.0, r, vals);
  CHECK(rep.sign_consistent);
  // The joint fit with the r-power prefactor recovers the exponential rate.
  CHECK(rep.slope == doctest::Approx(-1.0).epsilon(0.05));
}
