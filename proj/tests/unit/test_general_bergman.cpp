#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "focklab/errors.hpp"
#include "focklab/general_bergman.hpp"
#include "focklab/radial_bergman.hpp"

using namespace focklab;
using namespace focklab::general;
using focklab::potentials::MicroscopicPotential;

namespace {

MicroscopicPotential micro(double c, std::vector<HermitianTerm> t) {
  auto p = HermitianPoly::from_terms(t);
  return MicroscopicPotential(c, HomogeneousHermitianPoly(p.max_degree(), p));
}

MicroscopicPotential kappa_ginibre(double kappa) { return micro(0.0, {{1, 1, 1.0}, {2, 0, kappa}}); }

}  // namespace

TEST_CASE("radial moment matrix is diagonal with the closed-form moments") {
  for (int k = 1; k <= 3; ++k) {
    for (double c : {-0.5, 0.0, 1.0}) {
      const auto a = moment_matrix(micro(c, {{k, k, 1.0}}), 12);
      const auto t = radial::moments(k, c, 1.0, 11);
      for (int i = 0; i < 12; ++i) {
        for (int j = 0; j < 12; ++j) {
          if (i == j) {
            CHECK(a.entry(i, i).real() ==
                  doctest::Approx(std::exp(t.log_moments()[i])).epsilon(1e-12));
          } else {
            CHECK(std::abs(a.entry(i, j)) <= 1e-12 * a.scale(i) * a.scale(j));
          }
        }
      }
    }
  }
}

TEST_CASE("anisotropic moments: trapezoid rule self-convergence and coupling") {
  const auto p = kappa_ginibre(0.3);
  const auto a256 = moment_matrix(p, 4, 256);
  const auto a512 = moment_matrix(p, 4, 512);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(a256.entry(i, j) - a512.entry(i, j)) <= 1e-12 * std::abs(a512.entry(i, i)));
      CHECK(std::abs(a512.entry(i, j) - std::conj(a512.entry(j, i))) <= 1e-15 * a512.scale(i) * a512.scale(j));
    }
  }
  // Gamma(2) (1/2pi) int e^{-2 i t} (1 + 0.6 cos 2t)^{-2} dt = -75/64.
  CHECK(a512.entry(0, 2).real() == doctest::Approx(-1.171875).epsilon(1e-13));
  CHECK(std::abs(a512.entry(0, 2).imag()) <= 1e-15);
  CHECK(a512.entry(0, 0).real() == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(std::abs(a512.entry(0, 1)) <= 1e-40);
  CHECK(a512.doubling_discrepancy() >= 0.0);
  CHECK(a512.doubling_discrepancy() <= 1e-12);
}

TEST_CASE("moment matrix rejects bad arguments") {
  CHECK_THROWS_AS(moment_matrix(kappa_ginibre(0.3), 0), DomainError);
  CHECK_THROWS_AS(moment_matrix(kappa_ginibre(0.3), 4, 2), DomainError);
}

TEST_CASE("radial kernel coefficients are 1 / m_j") {
  const auto tk = truncated_kernel(moment_matrix(micro(0.5, {{2, 2, 1.0}}), 10));
  const auto t = radial::moments(2, 0.5, 1.0, 9);
  for (int j = 0; j < 10; ++j) {
    CHECK(tk.coefficient(j, j).real() == doctest::Approx(std::exp(-t.log_moments()[j])).epsilon(1e-12));
  }
}

TEST_CASE("order one kernel is the constant 1 / A_00") {
  for (const auto& p : {kappa_ginibre(0.3), micro(1.0, {{2, 2, 1.0}, {3, 1, cplx(0.1, 0.2)}})}) {
    const auto a = moment_matrix(p, 1);
    const auto tk = truncated_kernel(a);
    CHECK(tk.kernel(cplx(0.7, -0.3), cplx(-1.1, 0.4)).real() ==
          doctest::Approx(1.0 / a.entry(0, 0).real()).epsilon(1e-14));
  }
}

TEST_CASE("reproducing contract <z^l, L(., w)> = w^l, i.e. A conj(G) = I") {
  const auto a = moment_matrix(micro(0.0, {{2, 2, 1.0}, {3, 1, cplx(0.15, -0.1)}, {4, 0, 0.2}}), 10);
  const auto tk = truncated_kernel(a);
  for (int l = 0; l < 10; ++l) {
    for (int j = 0; j < 10; ++j) {
      cplx s = 0.0;
      for (int i = 0; i < 10; ++i) s += a.entry(l, i) * std::conj(tk.coefficient(i, j));
      CHECK(std::abs(s - (l == j ? 1.0 : 0.0)) * a.scale(j) / a.scale(l) <= 1e-12);
    }
  }
}

TEST_CASE("radial density reproduces R_0") {
  for (int k = 1; k <= 2; ++k) {
    for (double c : {-0.5, 0.0, 1.0}) {
      const auto p = micro(c, {{k, k, 1.0}});
      const auto tk = truncated_kernel(moment_matrix(p, 48));
      // Radii where the omitted tail j >= 48 is below 1e-12 relative.
      const std::vector<double> radii =
          k == 1 ? std::vector<double>{0.1, 0.5, 1.0, 1.5, 2.0} : std::vector<double>{0.1, 0.5, 1.0, 1.2};
      for (double r : radii) {
        const cplx z = std::polar(r, 0.7);
        CHECK(bergman_density(tk, p, z) ==
              doctest::Approx(radial::bergman_function_r0(k, c, 1.0, r)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("density at the origin") {
  CHECK(bergman_density(truncated_kernel(moment_matrix(micro(1.0, {{1, 1, 1.0}}), 4)),
                        micro(1.0, {{1, 1, 1.0}}), 0.0) == 0.0);
  const auto p = kappa_ginibre(0.3);
  const auto a = moment_matrix(p, 8);
  const auto tk = truncated_kernel(a);
  // With coupling through A_02, G_00 is the (0,0) entry of the inverse, not 1 / A_00.
  CHECK(bergman_density(tk, p, 0.0) == doctest::Approx(tk.coefficient(0, 0).real()).epsilon(1e-14));
  CHECK(tk.coefficient(0, 0).real() > 1.0 / a.entry(0, 0).real());
  const auto pc = micro(-0.5, {{1, 1, 1.0}});
  CHECK_THROWS_AS(bergman_density(truncated_kernel(moment_matrix(pc, 4)), pc, 0.0), DivergenceError);
}

TEST_CASE("monotone exhaustion in the truncation order") {
  const auto p = micro(0.3, {{2, 2, 1.0}, {3, 1, cplx(0.1, 0.05)}, {4, 0, 0.15}});
  const auto a = moment_matrix(p, 24);
  std::vector<cplx> zs = {cplx(0.2, 0.1), cplx(-0.8, 0.5), cplx(1.2, -0.4), cplx(0.0, 1.6)};
  std::vector<double> prev(zs.size(), 0.0);
  for (int n = 1; n <= 24; ++n) {
    const auto tk = truncated_kernel(a, n);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const double v = bergman_density(tk, p, zs[i]);
      CHECK(v >= prev[i] * (1.0 - 1e-12));
      prev[i] = v;
    }
  }
}

TEST_CASE("Hermitian positivity of the truncated kernel") {
  const auto p = micro(0.0, {{2, 2, 1.0}, {3, 1, cplx(0.1, 0.05)}, {4, 0, 0.15}});
  const auto tk = truncated_kernel(moment_matrix(p, 20));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + trial % 7;
    std::vector<cplx> z(m), alpha(m);
    for (int i = 0; i < m; ++i) {
      z[i] = cplx(u(rng), u(rng));
      alpha[i] = cplx(u(rng), u(rng));
    }
    cplx s = 0.0;
    double scale = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const cplx t = alpha[i] * std::conj(alpha[j]) * tk.kernel(z[i], z[j]);
        s += t;
        scale += std::abs(t);
      }
    }
    CHECK(std::abs(s.imag()) <= 1e-10 * scale);
    CHECK(s.real() >= -1e-10 * scale);
  }
}

TEST_CASE("kappa shift leaves the density invariant as N grows") {
  const auto p = kappa_ginibre(0.3);
  const auto a = moment_matrix(p, 48);
  const auto tk24 = truncated_kernel(a, 24);
  const auto tk48 = truncated_kernel(a, 48);
  double err24 = 0.0, err48 = 0.0, err48_inner = 0.0;
  for (double r : {0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
    for (double th = 0.0; th < 2 * M_PI; th += M_PI / 8) {
      const cplx z = std::polar(r, th);
      const double e24 = std::abs(bergman_density(tk24, p, z) - 1.0);
      const double e48 = std::abs(bergman_density(tk48, p, z) - 1.0);
      err24 = std::max(err24, e24);
      err48 = std::max(err48, e48);
      if (r <= 1.0) err48_inner = std::max(err48_inner, e48);
    }
  }
  CHECK(err48 < err24);
  CHECK(err48_inner <= 1e-6);
}

TEST_CASE("accuracy guard refuses an ill-conditioned truncation") {
  const auto a = moment_matrix(kappa_ginibre(0.4), 96);
  CHECK_THROWS_AS(truncated_kernel(a), NotPositiveDefiniteError);
  CHECK_NOTHROW(truncated_kernel(moment_matrix(kappa_ginibre(0.4), 48)));
}

TEST_CASE("doubling check catches an unresolved angular rule") {
  CHECK_THROWS_AS(moment_matrix(kappa_ginibre(0.49), 64, 512), ConvergenceError);
}
