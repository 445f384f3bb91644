#pragma once

#include <span>
#include <vector>

namespace focklab::stats {

struct LineFit {
  double slope;
  double intercept;
};

// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Least squares for y ~ X beta with X given column-wise (all columns the
// same length). Solved by modified Gram-Schmidt QR. Throws FitError when the
// columns are rank deficient.
std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  std::span<const double> y);

struct KsResult {
  double statistic;  // sup |F1 - F2|
  double p_value;    // asymptotic Kolmogorov distribution
};

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

}  // namespace focklab::stats
