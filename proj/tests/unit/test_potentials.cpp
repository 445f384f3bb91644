#include <doctest.h>

#include <cmath>
#include <random>

#include "focklab/config.hpp"
#include "focklab/errors.hpp"
#include "focklab/potentials.hpp"

using namespace focklab;
using namespace focklab::potentials;

namespace {

HermitianPoly poly(std::vector<HermitianTerm> t) { return HermitianPoly::from_terms(t); }

MicroscopicPotential micro(double c, std::vector<HermitianTerm> t) {
  auto p = poly(std::move(t));
  return MicroscopicPotential(c, HomogeneousHermitianPoly(p.max_degree(), p));
}

}  // namespace

TEST_CASE("hermitian polynomial evaluation and mirror filling") {
  // |z|^2 + 2 Re(0.3 z^2)
  const auto p = poly({{1, 1, 1.0}, {2, 0, 0.3}});
  CHECK(p.coeff(0, 2) == cplx(0.3, 0.0));
  const cplx z(1.2, -0.7);
  CHECK(p(z) == doctest::Approx(std::norm(z) + 2.0 * (0.3 * z * z).real()).epsilon(1e-15));
  CHECK(p.polarized(z, z).real() == doctest::Approx(p(z)).epsilon(1e-15));
  CHECK_THROWS_AS(poly({{2, 0, 0.3}, {0, 2, 0.4}}), DomainError);
  CHECK_THROWS_AS(poly({{1, 1, cplx(1.0, 0.5)}}), DomainError);
  CHECK_THROWS_AS(poly({{1, 1, 1.0}, {1, 1, 2.0}}), DomainError);
}

TEST_CASE("homogeneity Q0(tz) = t^{2k} Q0(z)") {
  const auto q0 = micro(0.0, {{2, 2, 1.0}, {3, 1, cplx(0.2, 0.1)}, {4, 0, 0.1}}).q0();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0), tt(0.1, 3.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z(u(rng), u(rng));
    const double t = tt(rng);
    CHECK(q0(t * z) == doctest::Approx(std::pow(t, 4) * q0(z)).epsilon(1e-13));
  }
}

TEST_CASE("positive definiteness uses a refined angular minimum") {
  const auto q0 = micro(0.0, {{2, 2, 1.0}, {4, 0, 0.45}}).q0();
  const auto m = q0.min_on_circle();
  CHECK(std::abs(m.derivative) <= 1e-8);
  CHECK(m.value == doctest::Approx(0.1).epsilon(1e-10));  // 1 - 2 * 0.45
  CHECK(q0.positive_definite());
  CHECK_THROWS_AS(micro(0.0, {{2, 2, 1.0}, {4, 0, 0.5}}), NotPositiveDefiniteError);  // min = 0
}

TEST_CASE("microscopic potential validation") {
  CHECK_THROWS_AS(micro(-1.0, {{1, 1, 1.0}}), DomainError);
  CHECK_THROWS_AS(micro(0.0, {{1, 1, -1.0}}), NotPositiveDefiniteError);
  double a = 0;
  CHECK(micro(0.5, {{2, 2, 3.0}}).is_radial(&a));
  CHECK(a == 3.0);
  CHECK_FALSE(micro(0.0, {{1, 1, 1.0}, {2, 0, 0.3}}).is_radial());
}

TEST_CASE("detect_k examples") {
  CHECK(detect_k(MacroscopicPotential::radial({0, 1}, 0.0)) == 1);
  CHECK(detect_k(MacroscopicPotential::radial({0, 0, 1}, 0.0)) == 2);
  CHECK(detect_k(MacroscopicPotential::radial({0, 1, 1}, 0.0)) == 1);
  // |z|^2 + Re(z^3) + |z|^4
  CHECK(detect_k(MacroscopicPotential::hermitian(
            poly({{1, 1, 1.0}, {3, 0, 0.5}, {2, 2, 1.0}}), 0.0)) == 1);
  // Delta of |z|^4 + 2 Re(0.45 z^3 zbar) is 4|z|^2 + ... indefinite
  CHECK_THROWS_AS(detect_k(MacroscopicPotential::hermitian(
                      poly({{2, 2, 1.0}, {3, 1, 1.5}}), 0.0)),
                  DomainError);
}

TEST_CASE("macroscopic potential validation") {
  CHECK_THROWS_AS(MacroscopicPotential::radial({1, 1}, 0.0), DomainError);      // Q(0) != 0
  CHECK_THROWS_AS(MacroscopicPotential::radial({0, 1, -1}, 0.0), DomainError);  // no growth
  CHECK_THROWS_AS(MacroscopicPotential::radial({0, 1}, -1.5), DomainError);
  CHECK_THROWS_AS(MacroscopicPotential::radial({0, 1}, 0.0, {{cplx(0, 0), 0.5}}), DomainError);
  CHECK_THROWS_AS(MacroscopicPotential::radial({0, 1}, 0.0, {{cplx(1, 0), -1.0}}), DomainError);
  CHECK_THROWS_AS(MacroscopicPotential::radial({0, 1}, 0.0, {{cplx(1, 0), 0.5}, {cplx(1, 0), 0.2}}),
                  DomainError);
}

TEST_CASE("canonical decomposition examples") {
  SUBCASE("|z|^2") {
    const auto d = canonical_decompose(MacroscopicPotential::radial({0, 1}, 0.0), 1);
    CHECK(d.q0.coeff(1, 1) == cplx(1.0, 0.0));
    for (const auto& h : d.h_coeffs) CHECK(h == cplx(0.0, 0.0));
    CHECK(d.q1.empty());
  }
  SUBCASE("|z|^2 + Re(z^3) + |z|^4") {
    const auto q = MacroscopicPotential::hermitian(poly({{1, 1, 1.0}, {3, 0, 0.5}, {2, 2, 1.0}}), 0.0);
    const auto d = canonical_decompose(q, 1);
    CHECK(d.q0.coeff(1, 1) == cplx(1.0, 0.0));
    for (const auto& h : d.h_coeffs) CHECK(h == cplx(0.0, 0.0));
    const cplx z(0.3, 0.2);
    CHECK(d.q1_at(z) == doctest::Approx((z * z * z).real() + std::pow(std::norm(z), 2)).epsilon(1e-14));
  }
  SUBCASE("|z|^2 + 2 Re(kappa z^2)") {
    const cplx kappa(0.3, -0.1);
    const auto q = MacroscopicPotential::hermitian(poly({{1, 1, 1.0}, {2, 0, kappa}}), 0.0);
    const auto d = canonical_decompose(q, 1);
    CHECK(d.h_coeffs.at(2) == 2.0 * kappa);
    CHECK(d.q0.coeff(2, 0) == cplx(0.0, 0.0));
    CHECK(d.q1.empty());
  }
}

TEST_CASE("canonical decomposition reconstructs Q") {
  const auto q = MacroscopicPotential::hermitian(
      poly({{1, 0, cplx(0.4, 0.2)}, {1, 1, 1.0}, {2, 0, cplx(0.1, 0.3)}, {2, 1, cplx(0.5, -0.2)},
            {3, 0, 0.7}, {2, 2, 0.25}, {4, 1, cplx(0.1, 0.1)}, {3, 3, 0.1}}),
      0.0);
  const int k = detect_k(q);
  const auto d = canonical_decompose(q, k);
  for (double x = -0.5; x <= 0.5; x += 0.05) {
    for (double y = -0.5; y <= 0.5; y += 0.05) {
      const cplx z(x, y);
      if (std::abs(z) > 0.5) continue;
      const double rec = d.q0(z) + d.h(z).real() + d.q1_at(z);
      CHECK(std::abs(q.q(z) - rec) <= 1e-12 * (1.0 + std::abs(q.q(z))));
    }
  }
  // Q_1 = O(|z|^{2k+1}): no terms of degree <= 2k survive.
  CHECK(d.q1.min_degree() > 2 * k);
}

TEST_CASE("mixed low-order terms break the hypotheses") {
  // z zbar^2 + conj: degree 3 mixed term below |z|^4
  const auto q = MacroscopicPotential::hermitian(poly({{2, 2, 1.0}, {2, 1, 0.1}}), 0.0);
  CHECK_THROWS_AS(canonical_decompose(q, 2), DomainError);
}

TEST_CASE("normalization examples") {
  CHECK(normalization_factor(micro(0.0, {{1, 1, 1.0}})) == doctest::Approx(1.0).epsilon(1e-15));
  for (int k = 1; k <= 4; ++k) {
    for (double c : {-0.5, 0.0, 1.0}) {
      CAPTURE(k);
      CAPTURE(c);
      CHECK(normalization_factor(micro(c, {{k, k, 1.0}})) ==
            doctest::Approx((1.0 + c) / k).epsilon(1e-14));
    }
  }
  CHECK(normalization_factor(micro(1.0, {{1, 1, 2.0}})) == doctest::Approx(1.0).epsilon(1e-15));
  const auto [qn, lambda] = normalize_potential(MacroscopicPotential::radial({0, 0, 3.0}, 1.0));
  CHECK(lambda == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(qn.radial_coeffs().at(2) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kappa shift examples") {
  {
    const auto [p, kappa] = kappa_shift(micro(0.0, {{1, 1, 1.0}}));
    CHECK(kappa == cplx(0.0, 0.0));
    CHECK(p.is_radial());
  }
  {
    const auto [p, kappa] = kappa_shift(micro(0.0, {{1, 1, 1.0}, {2, 0, 0.3}}));
    CHECK(kappa == cplx(0.3, 0.0));
    double a = 0;
    CHECK(p.is_radial(&a));
    CHECK(a == 1.0);
  }
  {
    // |z|^4 + Re(z^4) = |z|^4 + 2 Re(0.5 z^4)
    const auto [p, kappa] = kappa_shift(micro(0.0, {{2, 2, 1.0}, {4, 0, 0.5 - 1e-9}}));
    CHECK(kappa.real() == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(p.is_radial());
  }
  // 0.2 + 0.25 cos 2t + 0.1 cos 4t > 0, but 0.2 + 0.25 cos 2t is not
  const auto held = micro(0.0, {{2, 2, 0.2}, {3, 1, 0.125}, {4, 0, 0.05}});
  CHECK_THROWS_AS(kappa_shift(held), NotPositiveDefiniteError);
}

TEST_CASE("spectators enter n V_n with +inf at charges of positive weight exponent") {
  const auto q = MacroscopicPotential::radial({0, 1}, 1.0, {{cplx(2, 0), 0.5}, {cplx(-2, 0), -0.5}});
  CHECK(std::isinf(q.n_vn(0.0, 3)));
  CHECK(std::isinf(q.n_vn(cplx(2, 0), 3)));
  CHECK(std::isinf(q.n_vn(cplx(-2, 0), 3)));
  const cplx z(0.5, 0.5);
  const double expect = 3.0 * std::norm(z) - 2.0 * std::log(std::abs(z)) -
                        1.0 * std::log(std::abs(z - 2.0)) + 1.0 * std::log(std::abs(z + 2.0));
  CHECK(q.n_vn(z, 3) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("config round trip and validation") {
  const auto q = config::parse_potential(
      R"({"kind":"radial","k":1,"c":0.5,"radial_coeffs":[[1,1.0],[2,0.25]],"spectators":[[2,0,0.5]]})");
  CHECK(q.c() == 0.5);
  CHECK(q.radial_coeffs().at(2) == 0.25);
  CHECK(q.spectators().size() == 1);
  const auto back = config::parse_potential(config::to_json(q));
  CHECK(back.radial_coeffs() == q.radial_coeffs());
  CHECK(back.spectators().at(0).c == 0.5);

  const auto h = config::parse_potential(
      R"({"kind":"hermitian","hermitian_coeffs":[[1,1,1,0],[2,0,0.3,0]]})");
  CHECK(h.taylor().coeff(0, 2) == cplx(0.3, 0.0));

  CHECK_THROWS_AS(config::parse_potential("{"), DomainError);
  CHECK_THROWS_AS(config::parse_potential(R"({"kind":"radial"})"), DomainError);
  CHECK_THROWS_AS(config::parse_potential(R"({"kind":"disk","radial_coeffs":[[1,1]]})"), DomainError);
  CHECK_THROWS_AS(config::parse_potential(R"({"kind":"radial","radial_coeffs":[[1,1]],"x":1})"),
                  DomainError);
  CHECK_THROWS_AS(config::parse_potential(R"({"kind":"radial","k":2,"radial_coeffs":[[1,1]]})"),
                  DomainError);
  CHECK_THROWS_AS(config::parse_potential(R"({"kind":"radial","radial_coeffs":[[1,1],[1,2]]})"),
                  DomainError);
  CHECK_THROWS_AS(config::parse_microscopic(R"({"kind":"radial","radial_coeffs":[[1,1],[2,1]]})"),
                  DomainError);
  const auto m = config::parse_microscopic(R"({"kind":"radial","c":1,"radial_coeffs":[[2,0.5]]})");
  CHECK(m.k() == 2);
}
