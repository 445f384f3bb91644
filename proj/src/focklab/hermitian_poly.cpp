#include "focklab/hermitian_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "focklab/errors.hpp"

namespace focklab {

namespace {

cplx ipow(cplx z, int n) {
  cplx out(1.0, 0.0);
  for (int p = 0; p < n; ++p) out *= z;
  return out;
}

}  // namespace

HermitianPoly HermitianPoly::from_terms(const std::vector<HermitianTerm>& terms) {
  HermitianPoly p;
  for (const auto& t : terms) {
    if (t.i < 0 || t.j < 0) throw DomainError("negative monomial exponent");
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
      throw DomainError("non-finite coefficient");
    }
    auto key = std::make_pair(t.i, t.j);
    if (p.coeffs_.count(key)) {
      throw DomainError("duplicate coefficient for z^" + std::to_string(t.i) + " zbar^" +
                        std::to_string(t.j));
    }
    p.coeffs_[key] = t.coeff;
  }
  const double tol = 1e-14;
  auto snapshot = p.coeffs_;
  for (const auto& [key, a] : snapshot) {
    const auto [i, j] = key;
    const double scale = std::max(1.0, std::abs(a));
    if (i == j) {
      if (std::abs(a.imag()) > tol * scale) {
        throw DomainError("diagonal coefficient must be real for a real-valued polynomial");
      }
      p.coeffs_[key] = cplx(a.real(), 0.0);
      continue;
    }
    auto mirror = std::make_pair(j, i);
    auto it = p.coeffs_.find(mirror);
    if (it == p.coeffs_.end()) {
      p.coeffs_[mirror] = std::conj(a);
    } else if (std::abs(it->second - std::conj(a)) > tol * scale) {
      throw DomainError("coefficients violate Hermitian symmetry a_ij = conj(a_ji) at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  std::erase_if(p.coeffs_, [](const auto& kv) { return kv.second == cplx(0.0, 0.0); });
  return p;
}

HermitianPoly HermitianPoly::radial(const std::vector<double>& q) {
  std::vector<HermitianTerm> terms;
  for (std::size_t m = 0; m < q.size(); ++m) {
    if (q[m] != 0.0) terms.push_back({static_cast<int>(m), static_cast<int>(m), q[m]});
  }
  return from_terms(terms);
}

double HermitianPoly::operator()(cplx z) const {
  // Pair (i,j) with (j,i): a z^i zbar^j + conj(...) = 2 Re(a z^i zbar^j).
  double sum = 0.0;
  const cplx zb = std::conj(z);
  for (const auto& [key, a] : coeffs_) {
    const auto [i, j] = key;
    if (i < j) continue;
    const double v = (a * ipow(z, i) * ipow(zb, j)).real();
    sum += (i == j) ? v : 2.0 * v;
  }
  return sum;
}

cplx HermitianPoly::polarized(cplx z, cplx w) const {
  cplx sum(0.0, 0.0);
  const cplx wb = std::conj(w);
  for (const auto& [key, a] : coeffs_) sum += a * ipow(z, key.first) * ipow(wb, key.second);
  return sum;
}

cplx HermitianPoly::coeff(int i, int j) const {
  auto it = coeffs_.find({i, j});
  return it == coeffs_.end() ? cplx(0.0, 0.0) : it->second;
}

int HermitianPoly::max_degree() const {
  int d = -1;
  for (const auto& [key, a] : coeffs_) d = std::max(d, key.first + key.second);
  return d;
}

int HermitianPoly::min_degree() const {
  int d = -1;
  for (const auto& [key, a] : coeffs_) {
    const int deg = key.first + key.second;
    if (d < 0 || deg < d) d = deg;
  }
  return d;
}

HermitianPoly HermitianPoly::homogeneous_part(int degree) const {
  HermitianPoly out;
  for (const auto& [key, a] : coeffs_) {
    if (key.first + key.second == degree) out.coeffs_[key] = a;
  }
  return out;
}

HermitianPoly HermitianPoly::mixed_part() const {
  HermitianPoly out;
  for (const auto& [key, a] : coeffs_) {
    if (key.first >= 1 && key.second >= 1) out.coeffs_[key] = a;
  }
  return out;
}

HermitianPoly HermitianPoly::laplacian() const {
  HermitianPoly out;
  for (const auto& [key, a] : coeffs_) {
    const auto [i, j] = key;
    if (i >= 1 && j >= 1) out.coeffs_[{i - 1, j - 1}] = static_cast<double>(i * j) * a;
  }
  return out;
}

HermitianPoly HermitianPoly::scaled(double factor) const {
  HermitianPoly out;
  if (factor == 0.0) return out;
  for (const auto& [key, a] : coeffs_) out.coeffs_[key] = factor * a;
  return out;
}

HermitianPoly HermitianPoly::operator+(const HermitianPoly& other) const {
  HermitianPoly out = *this;
  for (const auto& [key, a] : other.coeffs_) out.coeffs_[key] += a;
  std::erase_if(out.coeffs_, [](const auto& kv) { return kv.second == cplx(0.0, 0.0); });
  return out;
}

HermitianPoly HermitianPoly::operator-(const HermitianPoly& other) const {
  return *this + other.scaled(-1.0);
}

HermitianPoly HermitianPoly::without(int i, int j) const {
  HermitianPoly out = *this;
  out.coeffs_.erase({i, j});
  out.coeffs_.erase({j, i});
  return out;
}

HomogeneousHermitianPoly::HomogeneousHermitianPoly(int degree, HermitianPoly poly)
    : degree_(degree), poly_(std::move(poly)) {
  if (degree_ < 2 || degree_ % 2 != 0) {
    throw DomainError("homogeneous Hermitian polynomial needs an even degree >= 2");
  }
  for (const auto& [key, a] : poly_.terms()) {
    if (key.first + key.second != degree_) {
      throw DomainError("term z^" + std::to_string(key.first) + " zbar^" +
                        std::to_string(key.second) + " is not of degree " +
                        std::to_string(degree_));
    }
  }
}

double HomogeneousHermitianPoly::on_circle(double theta) const {
  double sum = 0.0;
  for (const auto& [key, a] : poly_.terms()) {
    const double m = key.first - key.second;
    sum += (a * std::polar(1.0, m * theta)).real();
  }
  return sum;
}

double HomogeneousHermitianPoly::on_circle_d1(double theta) const {
  double sum = 0.0;
  for (const auto& [key, a] : poly_.terms()) {
    const double m = key.first - key.second;
    sum += (cplx(0.0, m) * a * std::polar(1.0, m * theta)).real();
  }
  return sum;
}

double HomogeneousHermitianPoly::on_circle_d2(double theta) const {
  double sum = 0.0;
  for (const auto& [key, a] : poly_.terms()) {
    const double m = key.first - key.second;
    sum -= m * m * (a * std::polar(1.0, m * theta)).real();
  }
  return sum;
}

AngularMinimum HomogeneousHermitianPoly::min_on_circle() const {
  constexpr int kScan = 512;
  const double h = 2.0 * std::numbers::pi / kScan;
  int best = 0;
  double best_val = on_circle(0.0);
  for (int m = 1; m < kScan; ++m) {
    const double v = on_circle(m * h);
    if (v < best_val) {
      best_val = v;
      best = m;
    }
  }
  const double lo = (best - 1) * h;
  const double hi = (best + 1) * h;
  double theta = best * h;
  for (int it = 0; it < 50; ++it) {
    const double d1 = on_circle_d1(theta);
    const double d2 = on_circle_d2(theta);
    if (d2 <= 0.0) break;
    const double next = theta - d1 / d2;
    if (next < lo || next > hi) break;
    const bool done = std::abs(next - theta) < 1e-15;
    theta = next;
    if (done) break;
  }
  double value = on_circle(theta);
  if (value > best_val) {
    theta = best * h;
    value = best_val;
  }
  return {theta, value, on_circle_d1(theta)};
}

bool HomogeneousHermitianPoly::positive_definite(double threshold) const {
  if (poly_.empty()) return false;
  return min_on_circle().value > threshold;
}

}  // namespace focklab
