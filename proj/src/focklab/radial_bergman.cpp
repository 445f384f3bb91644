#include "focklab/radial_bergman.hpp"

#include <cmath>
#include <string>

#include "focklab/errors.hpp"
#include "focklab/special_fn.hpp"
#include "focklab/stats.hpp"

namespace focklab::radial {

namespace {

void validate(int k, double c, double amplitude) {
  if (k < 1) throw DomainError("k must be >= 1");
  if (!(c > -1.0) || !std::isfinite(c)) throw DomainError("c must satisfy c > -1");
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw DomainError("amplitude must be positive");
  }
}

double log_moment_closed(int k, double c, double amplitude, long j) {
  const double s = (static_cast<double>(j) + c + 1.0) / k;
  return special_fn::log_gamma(s) - std::log(static_cast<double>(k)) - s * std::log(amplitude);
}

double damped_sum(int k, double c, double amplitude, double r, long terms) {
  validate(k, c, amplitude);
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("radius must be finite and >= 0");
  if (r == 0.0) {
    if (c > 0.0) return 0.0;
    if (c < 0.0) throw DivergenceError("Bergman function diverges at 0 for c < 0");
    return std::exp(-log_moment_closed(k, c, amplitude, 0));
  }
  const double log_r = std::log(r);
  const double damp = amplitude * std::pow(r, 2.0 * k);
  auto log_term = [&](long j) {
    return (2.0 * static_cast<double>(j) + 2.0 * c) * log_r - damp -
           log_moment_closed(k, c, amplitude, j);
  };
  if (terms < 0) {
    if (amplitude == 1.0) return special_fn::ml_kernel_scaled(k, c, r);
    return special_fn::detail::sum_unimodal_exp(log_term, special_fn::Summation::kCompensated);
  }
  special_fn::detail::Accumulator acc;
  for (long j = 0; j < terms; ++j) acc.add(std::exp(log_term(j)));
  return acc.value();
}

}  // namespace

MomentTable::MomentTable(int k, double c, double amplitude, int max_index)
    : k_(k), c_(c), amplitude_(amplitude) {
  validate(k, c, amplitude);
  if (max_index < 0) throw DomainError("moment table size must be >= 0");
  log_moments_.reserve(static_cast<std::size_t>(max_index) + 1);
  for (int j = 0; j <= max_index; ++j) log_moments_.push_back(log_moment(j));
}

double MomentTable::log_moment(long j) const { return log_moment_closed(k_, c_, amplitude_, j); }

MomentTable moments(int k, double c, double amplitude, int max_index) {
  return MomentTable(k, c, amplitude, max_index);
}

double bergman_function_r0(int k, double c, double amplitude, double r) {
  return damped_sum(k, c, amplitude, r, -1);
}

double truncated_r0(int k, double c, double amplitude, double r, long terms) {
  if (terms < 0) throw DomainError("term count must be >= 0");
  return damped_sum(k, c, amplitude, r, terms);
}

double laplacian_q0(int k, double amplitude, double r) {
  return amplitude * k * k * std::pow(r, 2.0 * k - 2.0);
}

DecayReport fit_decay(int k, double c, double amplitude, std::span<const double> r,
                      std::span<const double> r0_values) {
  validate(k, c, amplitude);
  if (r.size() != r0_values.size()) throw DomainError("radius / value length mismatch");
  DecayReport rep{k, c, amplitude, {}};
  std::vector<double> u_used, log_r_used, log_abs_used, log_rel_used;
  int positive = 0, negative = 0;
  double max_abs_rel = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    DecayPoint p{};
    p.r = r[i];
    p.u = amplitude * std::pow(r[i], 2.0 * k);
    p.r0 = r0_values[i];
    p.delta_q0 = laplacian_q0(k, amplitude, r[i]);
    p.rel_err = p.r0 / p.delta_q0 - 1.0;
    max_abs_rel = std::max(max_abs_rel, std::abs(p.rel_err));
    p.used = std::abs(p.rel_err) >= kRoundingFloor;
    if (p.used) {
      (p.rel_err > 0 ? positive : negative)++;
      u_used.push_back(p.u);
      log_r_used.push_back(std::log(p.r));
      log_abs_used.push_back(std::log(std::abs(p.r0 - p.delta_q0)));
      log_rel_used.push_back(std::log(std::abs(p.rel_err)));
    }
    rep.points.push_back(p);
  }
  rep.used_points = static_cast<int>(u_used.size());
  rep.sign_consistent = positive == 0 || negative == 0;
  if (rep.used_points == 0 && max_abs_rel < kRoundingFloor) {
    rep.identically_zero = true;
    return rep;
  }
  if (rep.used_points < 3) {
    throw FitError("only " + std::to_string(rep.used_points) +
                   " grid points above the rounding floor; need 3 for the decay fit");
  }
  const std::vector<double> ones(u_used.size(), 1.0);
  const auto beta = stats::least_squares({u_used, log_r_used, ones}, log_abs_used);
  rep.slope = beta[0];
  rep.alpha = -beta[0];
  rep.prefactor_exponent = beta[1];
  rep.naive_slope = stats::fit_line(u_used, log_rel_used).slope;
  return rep;
}

DecayReport thm1_decay_report(int k, double c, double amplitude, std::span<const double> r_grid) {
  validate(k, c, amplitude);
  if (r_grid.empty()) throw DomainError("decay grid is empty");
  std::vector<double> values;
  values.reserve(r_grid.size());
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (i > 0 && !(r_grid[i] > r_grid[i - 1])) throw DomainError("decay grid must be increasing");
    const double u = amplitude * std::pow(r_grid[i], 2.0 * k);
    if (u < 1.0 - 1e-12 || u > 30.0 + 1e-12) {
      throw DomainError("decay grid needs a r^{2k} in [1, 30]; got " + std::to_string(u));
    }
    values.push_back(bergman_function_r0(k, c, amplitude, r_grid[i]));
  }
  return fit_decay(k, c, amplitude, r_grid, values);
}

}  // namespace focklab::radial
