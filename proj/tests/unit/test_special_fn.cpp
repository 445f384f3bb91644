#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "focklab/special_fn.hpp"

using namespace focklab;
using namespace focklab::special_fn;

TEST_CASE("log_gamma at simple points") {
  CHECK(std::abs(log_gamma(1.0)) <= 1e-16);
  CHECK(std::abs(log_gamma(2.0)) <= 1e-16);
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-15));
  CHECK(log_gamma(11.0) == doctest::Approx(std::log(3628800.0)).epsilon(1e-15));
}

TEST_CASE("log_gamma against 50-digit fixture on [1e-3, 1e4]") {
  const auto rows = testing::log_gamma_rows();
  REQUIRE(rows.size() >= 20);
  bool saw_375 = false;
  for (const auto& r : rows) {
    CAPTURE(r.x);
    const double got = log_gamma(r.x);
    // Relative, with an absolute floor where ln Gamma crosses zero.
    CHECK(std::abs(got - r.value) <= 1e-13 * std::max(1.0, std::abs(r.value)));
    saw_375 = saw_375 || r.x == 3.75;
  }
  CHECK(saw_375);
}

TEST_CASE("log_gamma rejects x <= 0") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(log_gamma(NAN), DomainError);
}

TEST_CASE("Mittag-Leffler trivial cases") {
  CHECK(mittag_leffler({1, 1}, 1.0) == doctest::Approx(M_E).epsilon(1e-15));
  CHECK(mittag_leffler({0.5, 1.5}, 0.0) == doctest::Approx(1.0 / std::tgamma(1.5)).epsilon(1e-15));
  CHECK(mittag_leffler({1, 1}, 10.0) == doctest::Approx(std::exp(10.0)).epsilon(1e-14));
}

TEST_CASE("Mittag-Leffler against 50-digit fixture") {
  const auto rows = testing::mittag_leffler_rows();
  REQUIRE(rows.size() >= 30);
  for (const auto& r : rows) {
    CAPTURE(r.a);
    CAPTURE(r.b);
    CAPTURE(r.x);
    const double got = mittag_leffler({r.a, r.b}, r.x);
    CHECK(std::abs(got - r.value) <= 1e-12 * r.value);
  }
}

TEST_CASE("Mittag-Leffler parameter validation and overflow") {
  CHECK_THROWS_AS(MLParams(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(MLParams(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(mittag_leffler({1, 1}, -1.0), DomainError);
  CHECK_THROWS_AS(mittag_leffler({1, 1}, 800.0), OverflowError);
  CHECK_THROWS_AS(mittag_leffler({0.5, 0.5}, 30.0), OverflowError);
}

TEST_CASE("series shift identity E_{a,b} = x E_{a,a+b} + 1/Gamma(b)") {
  for (double a : {0.25, 0.5, 1.0, 1.5}) {
    for (double b : {0.3, 0.5, 1.0, 2.5}) {
      for (double x = 0.0; x <= 30.0; x += 2.5) {
        if (std::pow(x, 1.0 / a) > 650.0) continue;  // e^{x^{1/a}} overflows
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(x);
        const double lhs = mittag_leffler({a, b}, x);
        const double rhs = x * mittag_leffler({a, a + b}, x) + 1.0 / std::tgamma(b);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * lhs);
      }
    }
  }
}

TEST_CASE("Mittag-Leffler is increasing in x") {
  for (double b : {0.5, 1.0, 2.0}) {
    double prev = mittag_leffler({0.5, b}, 0.0);
    for (double x = 0.05; x <= 8.0; x += 0.05) {
      const double v = mittag_leffler({0.5, b}, x);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("ml_kernel_scaled examples") {
  CHECK(std::abs(ml_kernel_scaled(1, 0.0, 3.2) - 1.0) <= 1e-12);
  CHECK(ml_kernel_scaled(1, 1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(std::abs(ml_kernel_scaled(2, 0.0, 2.0) - 16.0) <= 1e-4);
  CHECK(ml_kernel_scaled(1, 1.0, 0.0) == 0.0);
  CHECK(ml_kernel_scaled(2, 0.0, 0.0) == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-15));
  CHECK_THROWS_AS(ml_kernel_scaled(1, -0.5, 0.0), DivergenceError);
  CHECK_THROWS_AS(ml_kernel_scaled(0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(ml_kernel_scaled(1, -1.0, 1.0), DomainError);
}

TEST_CASE("ml_kernel_scaled matches k E r^{2c} e^{-r^{2k}} from the fixtures") {
  // Rows (1/k, (1+c)/k, x) give R_0 at r = sqrt(x).
  for (const auto& row : testing::mittag_leffler_rows()) {
    const double kk = 1.0 / row.a;
    const int k = static_cast<int>(std::lround(kk));
    if (std::abs(kk - k) > 1e-12 || row.x == 0.0) continue;
    const double c = row.b * k - 1.0;
    if (!(c > -1.0)) continue;
    CAPTURE(k);
    CAPTURE(c);
    CAPTURE(row.x);
    const double expect = k * std::pow(row.x, c) * row.value * std::exp(-std::pow(row.x, k));
    CHECK(std::abs(ml_kernel_scaled(k, c, std::sqrt(row.x)) - expect) <= 1e-12 * expect);
  }
}

TEST_CASE("ml_kernel_scaled stays finite far past the overflow of E") {
  // k E(r^2) alone overflows near r^{2k} = 700.
  CHECK(std::abs(ml_kernel_scaled(1, 0.0, 40.0) - 1.0) <= 1e-11);
  CHECK(ml_kernel_scaled(2, 0.5, 8.0) == doctest::Approx(4.0 * 64.0).epsilon(1e-10));
}

TEST_CASE("ml_kernel_scaled is nonnegative and order-stable") {
  for (int k : {1, 2, 3}) {
    for (double c : {-0.5, 0.0, 1.0, 2.5}) {
      for (double r = 0.05; r <= 4.0; r += 0.05) {
        const double comp = ml_kernel_scaled(k, c, r, Summation::kCompensated);
        const double naive = ml_kernel_scaled(k, c, r, Summation::kNaive);
        CHECK(comp >= 0.0);
        CHECK(std::abs(comp - naive) <= 1e-12 * comp);
      }
    }
  }
}
