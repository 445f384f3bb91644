#pragma once

#include <span>
#include <vector>

#include "focklab/potentials.hpp"

namespace focklab::equilibrium {

// Radius R of the disk droplet: R Q'(R) / 2 = 1.
double droplet_radius(const potentials::MacroscopicPotential& q);

// tau_0^{-2k} = (1 / 2 pi k) int Delta Q_0(e^{i theta}) d theta.
double modulus_tau0(const HomogeneousHermitianPoly& q0);

// r_n with n r Q'(r) / 2 = 1 + c: the point mass -c at the origin carried by
// -(2c/n) log|zeta| is moved to the right-hand side.
double microscopic_scale(const potentials::MacroscopicPotential& q, long n);

// Equilibrium data of a radial potential.
class EquilibriumData {
 public:
  explicit EquilibriumData(const potentials::MacroscopicPotential& q);

  double droplet_radius() const { return radius_; }
  double tau0() const { return tau0_; }
  int k() const { return k_; }
  double c() const { return q_.c(); }
  // Delta Q inside the droplet, zero outside.
  double density(double r) const;
  double microscale(long n) const { return microscopic_scale(q_, n); }

 private:
  potentials::MacroscopicPotential q_;
  double radius_;
  double tau0_;
  int k_;
};

struct MicroscaleCheck {
  int k = 0;
  double c = 0.0;
  double tau0 = 0.0;
  std::vector<long> n;
  std::vector<double> r_n;
  std::vector<double> error;         // e_n
  std::vector<double> scaled_error;  // |e_n| n^{1/2k}
  double fitted_constant = 0.0;      // max |e_n| n^{1/2k}
  // log-log slope of |e_n| against n; 0 when the errors vanish.
  double empirical_rate = 0.0;
  bool identically_zero = false;
  // |e_n| n^{1/2k} non-increasing along n (within 1e-12): the O(n^{-1/2k})
  // bound holds with the fitted constant.
  bool bounded = false;
};

MicroscaleCheck microscale_asymptotic_check(const potentials::MacroscopicPotential& q,
                                            std::span<const long> n_list);

}  // namespace focklab::equilibrium
