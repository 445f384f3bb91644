#include "focklab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "focklab/errors.hpp"

namespace focklab::stats {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw FitError("line fit needs >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw FitError("line fit abscissae are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  std::span<const double> y) {
  const std::size_t p = columns.size();
  if (p == 0) throw FitError("least squares with no columns");
  const std::size_t m = y.size();
  if (m < p) throw FitError("least squares needs at least as many points as parameters");
  for (const auto& col : columns) {
    if (col.size() != m) throw FitError("least squares column length mismatch");
  }
  std::vector<std::vector<double>> q = columns;
  std::vector<std::vector<double>> r(p, std::vector<double>(p, 0.0));
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0.0;
      for (std::size_t t = 0; t < m; ++t) dot += q[i][t] * q[j][t];
      r[i][j] = dot;
      for (std::size_t t = 0; t < m; ++t) q[j][t] -= dot * q[i][t];
    }
    double norm = 0.0, orig = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
      norm += q[j][t] * q[j][t];
      orig += columns[j][t] * columns[j][t];
    }
    norm = std::sqrt(norm);
    if (!(norm > 1e-12 * std::sqrt(orig))) throw FitError("least squares design is rank deficient");
    r[j][j] = norm;
    for (std::size_t t = 0; t < m; ++t) q[j][t] /= norm;
  }
  std::vector<double> qty(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t t = 0; t < m; ++t) qty[j] += q[j][t] * y[t];
  }
  std::vector<double> beta(p, 0.0);
  for (std::size_t j = p; j-- > 0;) {
    double v = qty[j];
    for (std::size_t i = j + 1; i < p; ++i) v -= r[j][i] * beta[i];
    beta[j] = v / r[j][j];
  }
  return beta;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("KS test needs two non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double sq = std::sqrt(ne);
  const double lambda = (sq + 0.12 + 0.11 / sq) * d;
  return {d, kolmogorov_survival(lambda)};
}

}  // namespace focklab::stats
