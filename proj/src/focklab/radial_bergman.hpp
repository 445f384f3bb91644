#pragma once

#include <span>
#include <vector>

namespace focklab::radial {

// m_j = int |z|^{2j+2c} e^{-a |z|^{2k}} dA = a^{-(j+c+1)/k} Gamma((j+c+1)/k) / k,
// the squared norms of the orthogonal monomials for Q_0 = a |z|^{2k}.
class MomentTable {
 public:
  MomentTable(int k, double c, double amplitude, int max_index);

  int k() const { return k_; }
  double c() const { return c_; }
  double amplitude() const { return amplitude_; }
  int max_index() const { return static_cast<int>(log_moments_.size()) - 1; }

  const std::vector<double>& log_moments() const { return log_moments_; }
  // Closed form for any j >= 0, not limited to the tabulated range.
  double log_moment(long j) const;

 private:
  int k_;
  double c_;
  double amplitude_;
  std::vector<double> log_moments_;
};

MomentTable moments(int k, double c, double amplitude, int max_index);

// R_0(r) = sum_j r^{2j+2c} e^{-a r^{2k}} / m_j. Throws DivergenceError at
// r = 0 when c < 0.
double bergman_function_r0(int k, double c, double amplitude, double r);

// Same series cut after `terms` terms (j < terms).
double truncated_r0(int k, double c, double amplitude, double r, long terms);

// Delta Q_0 at radius r for Q_0 = a r^{2k}.
double laplacian_q0(int k, double amplitude, double r);

struct DecayPoint {
  double r;
  double u;         // a r^{2k}
  double r0;
  double delta_q0;
  double rel_err;   // R_0 / Delta Q_0 - 1
  bool used;        // false when |rel_err| < 1e-13 (rounding floor)
};

// Decay of R_0 / Delta Q_0 - 1 with the exponential rate and the power-law
// prefactor fitted together:
//   ln|R_0 - Delta Q_0| = slope * a r^{2k} + prefactor_exponent * ln r + const.
struct DecayReport {
  int k;
  double c;
  double amplitude;
  std::vector<DecayPoint> points;
  int used_points = 0;
  bool identically_zero = false;
  bool sign_consistent = true;
  double slope = 0.0;
  double alpha = 0.0;               // -slope
  double prefactor_exponent = 0.0;  // power of r in |R_0 - Delta Q_0|
  // Slope of ln|rel_err| against a r^{2k} alone, ignoring the prefactor.
  double naive_slope = 0.0;

  bool slope_in_band(double lo = -1.05, double hi = -0.95) const {
    return slope >= lo && slope <= hi;
  }
};

inline constexpr double kRoundingFloor = 1e-13;

// Requires an increasing grid with a r^{2k} in [1, 30].
DecayReport thm1_decay_report(int k, double c, double amplitude, std::span<const double> r_grid);

// Fits an already-computed set of (r, R_0) values; used with extended-precision
// fixture values.
DecayReport fit_decay(int k, double c, double amplitude, std::span<const double> r,
                      std::span<const double> r0_values);

}  // namespace focklab::radial
