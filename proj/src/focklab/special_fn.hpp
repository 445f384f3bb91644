#pragma once

#include <cmath>
#include <limits>

#include "focklab/errors.hpp"

namespace focklab::special_fn {

// Parameters (a, b) of E_{a,b}. For the Mittag-Leffler kernel of a degree-2k
// potential with conical parameter c these are a = 1/k, b = (1+c)/k.
struct MLParams {
  double a;
  double b;

  MLParams(double a_, double b_);
};

enum class Summation { kCompensated, kNaive };

// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

// E_{a,b}(x) = sum_j x^j / Gamma(a j + b) for x >= 0. Throws OverflowError
// when the value exceeds the double range; use ml_kernel_scaled there.
double mittag_leffler(const MLParams& p, double x,
                      Summation mode = Summation::kCompensated);

// R_0(r) = k E_{1/k,(1+c)/k}(r^2) r^{2c} e^{-r^{2k}}, the Bergman function of
// V_0 = |z|^{2k} - 2c log|z|, summed as damped terms that never exceed one.
// At r = 0 returns 0 (c > 0) or 1/m_0 (c = 0) and throws DivergenceError
// for c < 0.
double ml_kernel_scaled(int k, double c, double r,
                        Summation mode = Summation::kCompensated);

namespace detail {

// Running sum with Neumaier compensation; kNaive degrades to plain addition.
class Accumulator {
 public:
  explicit Accumulator(Summation mode = Summation::kCompensated) : mode_(mode) {}

  void add(double v) {
    if (mode_ == Summation::kNaive) {
      sum_ += v;
      return;
    }
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  Summation mode_;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Sums exp(log_term(j)) for j = 0, 1, ... where the log-terms are unimodal in
// j. Stops once the terms are past their peak and `tail_run` consecutive terms
// sit below rel_tol times the running sum, or at max_terms (throws).
template <class LogTerm>
double sum_unimodal_exp(LogTerm&& log_term, Summation mode, double shift = 0.0,
                        double rel_tol = 1e-18, int tail_run = 20,
                        long max_terms = 10'000'000);

// Largest value of a unimodal log-term sequence.
template <class LogTerm>
double unimodal_peak(LogTerm&& log_term, long max_terms = 10'000'000);

}  // namespace detail

}  // namespace focklab::special_fn

namespace focklab::special_fn::detail {

template <class LogTerm>
double sum_unimodal_exp(LogTerm&& log_term, Summation mode, double shift,
                        double rel_tol, int tail_run, long max_terms) {
  Accumulator acc(mode);
  double prev = -std::numeric_limits<double>::infinity();
  bool decreasing = false;
  int small_run = 0;
  for (long j = 0; j < max_terms; ++j) {
    const double lt = log_term(j);
    const double t = std::exp(lt - shift);
    acc.add(t);
    if (lt < prev) decreasing = true;
    prev = lt;
    if (decreasing && t <= rel_tol * acc.value()) {
      if (++small_run >= tail_run) return acc.value();
    } else {
      small_run = 0;
    }
  }
  throw ConvergenceError("damped series did not converge within term budget");
}

template <class LogTerm>
double unimodal_peak(LogTerm&& log_term, long max_terms) {
  double best = log_term(0);
  for (long j = 1; j < max_terms; ++j) {
    const double lt = log_term(j);
    if (lt < best) return best;
    best = lt;
  }
  throw ConvergenceError("series terms did not reach their peak");
}

}  // namespace focklab::special_fn::detail
