#pragma once

#include <span>
#include <vector>

#include "focklab/potentials.hpp"

namespace focklab::finite {

// The radial weight r^{power} e^{-n Q(r)} written in t = ln r, including the
// Jacobian: g(t) = exp((power + 1) t - n Q(e^t)). Unimodal whenever r Q'(r)
// is increasing.
class RadialWeight {
 public:
  RadialWeight(const potentials::MacroscopicPotential& q, double power, long n);

  double log_g(double t) const;
  double peak_t() const { return peak_t_; }
  double peak_log() const { return peak_log_; }
  // Interval outside of which g < e^{-kWindowDepth} g(peak).
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  // ln of 2 int_0^inf r^{power} e^{-n Q(r)} dr, relative accuracy ~1e-13.
  double log_integral() const;
  // 2 int_{lower}^{t} g / (same over the full window), for tabulated inverse CDFs.
  std::vector<double> cumulative(std::span<const double> t_nodes) const;

  static constexpr double kWindowDepth = 60.0;

 private:
  const potentials::MacroscopicPotential* q_;
  double power_;
  double n_;
  double peak_t_;
  double peak_log_;
  double lower_;
  double upper_;
};

// m_j^{(n)} = int |zeta|^{2j+2c} e^{-n Q} dA for j < n and the one-point
// intensity of the n-point ensemble in V_n = Q - (2c/n) log|zeta|.
class FiniteKernel {
 public:
  FiniteKernel(const potentials::MacroscopicPotential& q, long n);

  long n() const { return n_; }
  double c() const { return q_.c(); }
  const potentials::MacroscopicPotential& potential() const { return q_; }
  const std::vector<double>& log_norms() const { return log_norms_; }

  // k_n(zeta, zeta) e^{-n V_n(zeta)}.
  double intensity(cplx zeta) const;
  double intensity_radial(double r) const;
  // R_n(z) = r_n^2 * intensity(r_n z).
  double rescaled_intensity(cplx z, double rn) const;
  // int over r_lo < |zeta| < r_hi of the intensity dA; total mass is n.
  double annulus_mass(double r_lo, double r_hi) const;
  double mass() const;
  // annulus_mass / (r_hi^2 - r_lo^2): the exact bin average of a radial histogram.
  double annulus_average(double r_lo, double r_hi) const;

 private:
  potentials::MacroscopicPotential q_;
  long n_;
  std::vector<double> log_norms_;
};

FiniteKernel finite_moments(const potentials::MacroscopicPotential& q, long n);

// Errors below this are rounding noise and count as converged.
inline constexpr double kConvergedFloor = 1e-13;

struct ConvergenceReport {
  int k = 0;
  double c = 0.0;
  double lambda = 1.0;     // normalization factor applied to Q
  double amplitude = 0.0;  // Q_0 = amplitude |z|^{2k} after normalization
  bool homogeneous = false;
  std::vector<long> n_list;
  std::vector<double> z_grid;
  std::vector<double> r_n;
  std::vector<double> r0;                  // R_0 on z_grid
  std::vector<std::vector<double>> values;  // values[i][g] = R_{n_i}(z_g)
  std::vector<double> sup_error;
  // First index from which each sup_error is below its predecessor or already
  // at the rounding floor; -1 if even the last step fails that.
  int decreasing_from = -1;
  // Homogeneous Q only: max relative deviation of R_n from the truncated R_0
  // series, and whether it is below 1e-12.
  double identity_deviation = 0.0;
  bool identity_holds = false;
};

// Rejects z_grid points at 0 when c < 0 (DomainError).
ConvergenceReport convergence_report(const potentials::MacroscopicPotential& q,
                                     std::span<const long> n_list,
                                     std::span<const double> z_grid);

}  // namespace focklab::finite
