#include "focklab/potentials.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "focklab/errors.hpp"

namespace focklab::potentials {

namespace {

void check_c(double c) {
  if (!(c > -1.0) || !std::isfinite(c)) {
    throw DomainError("conical parameter c must satisfy c > -1, got " + std::to_string(c));
  }
}

}  // namespace

MicroscopicPotential::MicroscopicPotential(double c, HomogeneousHermitianPoly q0)
    : c_(c), q0_(std::move(q0)) {
  check_c(c_);
  if (!q0_.positive_definite()) {
    throw NotPositiveDefiniteError("Q_0 is not positive definite on the unit circle");
  }
}

bool MicroscopicPotential::is_radial(double* amplitude) const {
  const auto& terms = q0_.poly().terms();
  if (terms.size() != 1) return false;
  const auto& [key, a] = *terms.begin();
  if (key.first != key.second) return false;
  if (amplitude) *amplitude = a.real();
  return true;
}

double MicroscopicPotential::v0(cplx z) const {
  return q0_(z) - 2.0 * c_ * std::log(std::abs(z));
}

MacroscopicPotential::MacroscopicPotential(PotentialKind kind, HermitianPoly poly,
                                           std::vector<double> radial, double c,
                                           std::vector<Spectator> spectators)
    : kind_(kind),
      poly_(std::move(poly)),
      laplacian_(poly_.laplacian()),
      radial_(std::move(radial)),
      c_(c),
      spectators_(std::move(spectators)) {
  validate();
}

MacroscopicPotential MacroscopicPotential::radial(std::vector<double> q, double c,
                                                  std::vector<Spectator> spectators) {
  while (!q.empty() && q.back() == 0.0) q.pop_back();
  if (q.empty()) throw DomainError("radial potential has no nonzero coefficient");
  if (q[0] != 0.0) throw DomainError("potential must satisfy Q(0) = 0");
  auto poly = HermitianPoly::radial(q);
  return MacroscopicPotential(PotentialKind::kRadial, std::move(poly), std::move(q), c,
                              std::move(spectators));
}

MacroscopicPotential MacroscopicPotential::hermitian(HermitianPoly q, double c,
                                                     std::vector<Spectator> spectators) {
  if (q.empty()) throw DomainError("hermitian potential has no nonzero coefficient");
  return MacroscopicPotential(PotentialKind::kHermitian, std::move(q), {}, c,
                              std::move(spectators));
}

void MacroscopicPotential::validate() const {
  check_c(c_);
  if (poly_.coeff(0, 0) != cplx(0.0, 0.0)) throw DomainError("potential must satisfy Q(0) = 0");
  const int top = poly_.max_degree();
  if (kind_ == PotentialKind::kRadial) {
    for (double v : radial_) {
      if (!std::isfinite(v)) throw DomainError("non-finite radial coefficient");
    }
    if (!(radial_.back() > 0.0)) {
      throw DomainError("leading radial coefficient must be positive (growth condition)");
    }
  } else {
    if (top % 2 != 0) throw DomainError("top-degree part of Q has odd degree; Q cannot grow");
    HomogeneousHermitianPoly lead(top, poly_.homogeneous_part(top));
    if (!lead.positive_definite()) {
      throw DomainError("top-degree part of Q is not positive definite (growth condition)");
    }
  }
  for (std::size_t s = 0; s < spectators_.size(); ++s) {
    const auto& sp = spectators_[s];
    if (sp.a == cplx(0.0, 0.0)) throw DomainError("spectator charge placed at the origin");
    if (!(sp.c > -1.0) || !std::isfinite(sp.c)) {
      throw DomainError("spectator strength must satisfy c_j > -1");
    }
    for (std::size_t t = 0; t < s; ++t) {
      if (spectators_[t].a == sp.a) throw DomainError("spectator charges must be distinct");
    }
  }
}

double MacroscopicPotential::q(cplx zeta) const {
  if (kind_ == PotentialKind::kRadial) return q_radial(std::abs(zeta));
  return poly_(zeta);
}

double MacroscopicPotential::q_radial(double r) const {
  if (kind_ != PotentialKind::kRadial) throw DomainError("q_radial on a non-radial potential");
  const double r2 = r * r;
  double sum = 0.0;
  for (std::size_t m = radial_.size(); m-- > 0;) sum = sum * r2 + radial_[m];
  return sum;
}

double MacroscopicPotential::disk_mass(double r) const {
  if (kind_ != PotentialKind::kRadial) throw DomainError("disk_mass on a non-radial potential");
  const double r2 = r * r;
  double sum = 0.0;
  for (std::size_t m = radial_.size(); m-- > 1;) {
    sum = sum * r2 + static_cast<double>(m) * radial_[m];
  }
  return sum * r2;
}

double MacroscopicPotential::h(cplx zeta) const {
  double sum = 0.0;
  for (const auto& sp : spectators_) sum += 2.0 * sp.c * std::log(std::abs(zeta - sp.a));
  return sum;
}

double MacroscopicPotential::n_vn(cplx zeta, int n) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double v = static_cast<double>(n) * q(zeta);
  if (c_ != 0.0) {
    const double r = std::abs(zeta);
    if (r == 0.0) return inf;
    v -= 2.0 * c_ * std::log(r);
  }
  for (const auto& sp : spectators_) {
    if (sp.c == 0.0) continue;
    const double d = std::abs(zeta - sp.a);
    if (d == 0.0) return inf;
    v -= 2.0 * sp.c * std::log(d);
  }
  return v;
}

MacroscopicPotential MacroscopicPotential::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("potential scale factor must be positive");
  std::vector<double> radial = radial_;
  for (auto& v : radial) v *= lambda;
  return MacroscopicPotential(kind_, poly_.scaled(lambda), std::move(radial), c_, spectators_);
}

MacroscopicPotential MacroscopicPotential::with_c(double c) const {
  return MacroscopicPotential(kind_, poly_, radial_, c, spectators_);
}

MacroscopicPotential MacroscopicPotential::without_spectators() const {
  return MacroscopicPotential(kind_, poly_, radial_, c_, {});
}

cplx CanonicalDecomposition::h(cplx zeta) const {
  cplx sum(0.0, 0.0);
  for (std::size_t m = h_coeffs.size(); m-- > 0;) sum = sum * zeta + h_coeffs[m];
  return sum;
}

int detect_k(const MacroscopicPotential& q) {
  if (q.is_radial()) {
    const auto& coeffs = q.radial_coeffs();
    for (std::size_t m = 1; m < coeffs.size(); ++m) {
      if (coeffs[m] == 0.0) continue;
      if (coeffs[m] < 0.0) {
        throw NotPositiveDefiniteError("indefinite leading part of Delta Q at 0");
      }
      return static_cast<int>(m);
    }
    throw DomainError("Delta Q vanishes identically at 0");
  }
  const HermitianPoly lap = q.taylor().laplacian();
  if (lap.empty()) throw DomainError("Delta Q vanishes identically at 0");
  const int d = lap.min_degree();
  if (d % 2 != 0) throw NotPositiveDefiniteError("indefinite leading part of Delta Q at 0");
  const int k = d / 2 + 1;
  const HermitianPoly lead = lap.homogeneous_part(d);
  if (d == 0) {
    if (lead.coeff(0, 0).real() > 0.0) return k;
    throw NotPositiveDefiniteError("indefinite leading part of Delta Q at 0");
  }
  if (!HomogeneousHermitianPoly(d, lead).positive_definite()) {
    throw NotPositiveDefiniteError("indefinite leading part of Delta Q at 0");
  }
  return k;
}

CanonicalDecomposition canonical_decompose(const MacroscopicPotential& q, int k) {
  if (k < 1) throw DomainError("canonical decomposition needs k >= 1");
  const HermitianPoly& taylor = q.taylor();
  for (const auto& [key, a] : taylor.terms()) {
    const auto [i, j] = key;
    if (i >= 1 && j >= 1 && i + j < 2 * k) {
      throw DomainError("Q has mixed Taylor terms below degree 2k; k is inconsistent with Q");
    }
  }
  CanonicalDecomposition out;
  out.h_coeffs.assign(2 * k + 1, cplx(0.0, 0.0));
  for (int m = 1; m <= 2 * k; ++m) {
    // d^m Q(0) / m! is the coefficient of zeta^m; H carries twice that.
    out.h_coeffs[m] = 2.0 * taylor.coeff(m, 0);
  }
  HermitianPoly mixed_top = taylor.homogeneous_part(2 * k).mixed_part();
  out.q0 = HomogeneousHermitianPoly(2 * k, mixed_top);
  if (!out.q0.positive_definite()) {
    throw NotPositiveDefiniteError("Q_0 of the canonical decomposition is not positive definite");
  }
  HermitianPoly low;
  for (int d = 0; d <= 2 * k; ++d) low = low + taylor.homogeneous_part(d);
  out.q1 = taylor - low;
  return out;
}

MicroscopicPotential microscopic_potential(const MacroscopicPotential& q) {
  const int k = detect_k(q);
  return MicroscopicPotential(q.c(), canonical_decompose(q, k).q0);
}

double normalization_factor(const MicroscopicPotential& micro) {
  // Delta^k (z^i zbar^j)(0) vanishes unless i = j = k, where it is (k!)^2,
  // so the quotient reduces to a_kk k.
  const int k = micro.k();
  const double akk = micro.q0().coeff(k, k).real();
  if (!(akk > 0.0)) throw NotPositiveDefiniteError("Q_0 has non-positive |z|^{2k} coefficient");
  double fact_k = 1.0;
  double fact_km1 = 1.0;
  for (int i = 2; i <= k; ++i) fact_k *= i;
  for (int i = 2; i <= k - 1; ++i) fact_km1 *= i;
  const double lap_k = fact_k * fact_k * akk;
  return (1.0 + micro.c()) * k * fact_km1 * fact_km1 / lap_k;
}

std::pair<MacroscopicPotential, double> normalize_potential(const MacroscopicPotential& q) {
  const double lambda = normalization_factor(microscopic_potential(q));
  return {q.scaled(lambda), lambda};
}

std::pair<MicroscopicPotential, cplx> kappa_shift(const MicroscopicPotential& p) {
  const int k = p.k();
  const cplx kappa = p.kappa();
  HomogeneousHermitianPoly shifted(2 * k, p.q0().poly().without(2 * k, 0));
  if (!shifted.positive_definite()) {
    throw NotPositiveDefiniteError("kappa-shifted Q_0 lost positive definiteness");
  }
  return {MicroscopicPotential(p.c(), std::move(shifted)), kappa};
}

}  // namespace focklab::potentials
