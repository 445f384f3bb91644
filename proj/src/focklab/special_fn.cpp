#include "focklab/special_fn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace focklab::special_fn {

namespace {

constexpr int kZetaTerms = 40;

// zeta(k) - 1 for k = 2..kZetaTerms+1: direct sum to N-1 plus an
// Euler-Maclaurin tail from N.
std::array<double, kZetaTerms + 2> zeta_minus_one_table() {
  std::array<double, kZetaTerms + 2> out{};
  constexpr int N = 50;
  for (int k = 2; k < kZetaTerms + 2; ++k) {
    const double kk = k;
    const double nn = N;
    double tail = std::pow(nn, 1.0 - kk) / (kk - 1.0) + 0.5 * std::pow(nn, -kk) +
                  kk * std::pow(nn, -kk - 1.0) / 12.0 -
                  kk * (kk + 1) * (kk + 2) * std::pow(nn, -kk - 3.0) / 720.0 +
                  kk * (kk + 1) * (kk + 2) * (kk + 3) * (kk + 4) *
                      std::pow(nn, -kk - 5.0) / 30240.0;
    double sum = tail;
    for (int n = N - 1; n >= 2; --n) sum += std::pow(static_cast<double>(n), -kk);
    out[k] = sum;
  }
  return out;
}

// ln Gamma(1 + eps) for |eps| <= 1/2.
double log_gamma_1p(double eps) {
  static const auto zeta1 = zeta_minus_one_table();
  double series = 0.0;
  double p = eps;
  for (int k = 2; k < kZetaTerms + 2; ++k) {
    p *= -eps;
    series += zeta1[k] * p / k;
  }
  // here p = -(-eps)^k, hence the subtraction
  return -std::log1p(eps) + eps * (1.0 - std::numbers::egamma) - series;
}

double log_gamma_stirling(double x) {
  // B_{2m} / (2m (2m-1))
  static constexpr std::array<double, 10> kCoef = {
      1.0 / 12.0,          -1.0 / 360.0,       1.0 / 1260.0,
      -1.0 / 1680.0,       1.0 / 1188.0,       -691.0 / 360360.0,
      1.0 / 156.0,         -3617.0 / 122400.0, 43867.0 / 244188.0,
      -174611.0 / 125400.0};
  const double inv2 = 1.0 / (x * x);
  double s = kCoef.back();
  for (int i = static_cast<int>(kCoef.size()) - 2; i >= 0; --i) s = s * inv2 + kCoef[i];
  const double half_log_two_pi = 0.91893853320467274178032973640562;
  return (x - 0.5) * std::log(x) - x + half_log_two_pi + s / x;
}

}  // namespace

MLParams::MLParams(double a_, double b_) : a(a_), b(b_) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("Mittag-Leffler parameters require a > 0 and b > 0");
  }
}

double log_gamma(double x) {
  if (!(x > 0.0) || std::isnan(x)) {
    throw DomainError("log_gamma requires x > 0, got " + std::to_string(x));
  }
  if (std::isinf(x)) return x;
  if (x < 0.5) return log_gamma_1p(x) - std::log(x);
  if (x < 1.5) return log_gamma_1p(x - 1.0);
  if (x < 2.5) return std::log1p(x - 2.0) + log_gamma_1p(x - 2.0);
  if (x < 10.0) {
    double y = x;
    double prod = 1.0;
    while (y >= 2.5) {
      y -= 1.0;
      prod *= y;
    }
    return std::log(prod) + std::log1p(y - 2.0) + log_gamma_1p(y - 2.0);
  }
  return log_gamma_stirling(x);
}

double mittag_leffler(const MLParams& p, double x, Summation mode) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("mittag_leffler requires finite x >= 0");
  }
  if (x == 0.0) return std::exp(-log_gamma(p.b));
  const double log_x = std::log(x);
  auto log_term = [&](long j) {
    return static_cast<double>(j) * log_x - log_gamma(p.a * static_cast<double>(j) + p.b);
  };
  const double peak = detail::unimodal_peak(log_term);
  const double scaled = detail::sum_unimodal_exp(log_term, mode, peak);
  const double log_value = peak + std::log(scaled);
  if (log_value >= std::log(std::numeric_limits<double>::max())) {
    throw OverflowError("E_{a,b}(x) exceeds double range; use the scaled kernel");
  }
  return std::exp(peak) * scaled;
}

double ml_kernel_scaled(int k, double c, double r, Summation mode) {
  if (k < 1) throw DomainError("ml_kernel_scaled requires k >= 1");
  if (!(c > -1.0) || !std::isfinite(c)) throw DomainError("ml_kernel_scaled requires c > -1");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("ml_kernel_scaled requires r >= 0");
  const double kk = k;
  const double log_k = std::log(kk);
  if (r == 0.0) {
    if (c > 0.0) return 0.0;
    if (c < 0.0) throw DivergenceError("Bergman function diverges at 0 for c < 0");
    return std::exp(log_k - log_gamma((c + 1.0) / kk));
  }
  const double log_r = std::log(r);
  const double damp = std::pow(r, 2.0 * kk);
  auto log_term = [&](long j) {
    const double jj = static_cast<double>(j);
    return (2.0 * jj + 2.0 * c) * log_r - damp + log_k - log_gamma((jj + c + 1.0) / kk);
  };
  return detail::sum_unimodal_exp(log_term, mode);
}

}  // namespace focklab::special_fn
