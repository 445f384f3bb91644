#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "focklab/hermitian_poly.hpp"

namespace focklab::potentials {

// Fixed logarithmic point charge 2 c_j log|zeta - a_j| in h.
struct Spectator {
  cplx a;
  double c;
};

enum class PotentialKind { kRadial, kHermitian };

// V_0 = Q_0 - 2c log|z| with Q_0 positive definite and homogeneous of degree
// 2k. Q_0 may carry a holomorphic part a_{2k,0} z^{2k} (kappa != 0); use
// kappa_shift to strip it.
class MicroscopicPotential {
 public:
  MicroscopicPotential(double c, HomogeneousHermitianPoly q0);

  int k() const { return q0_.k(); }
  double c() const { return c_; }
  const HomogeneousHermitianPoly& q0() const { return q0_; }

  // d^{2k} Q_0(0) / (2k)! = a_{2k,0}.
  cplx kappa() const { return q0_.coeff(2 * k(), 0); }
  bool holomorphic_part_vanishes() const { return kappa() == cplx(0.0, 0.0); }
  // Radial Q_0 = a |z|^{2k}: returns true and sets amplitude.
  bool is_radial(double* amplitude = nullptr) const;

  // Delta Q_0 at z.
  double laplacian_q0(cplx z) const { return q0_.poly().laplacian()(z); }
  double v0(cplx z) const;

 private:
  double c_;
  HomogeneousHermitianPoly q0_;
};

// Macroscopic potential Q with the 1/n corrections of V_n. h_0 is identically
// zero here: spectator charges carry all of h.
class MacroscopicPotential {
 public:
  // Radial Q(r) = sum_m q[m] r^{2m}; q[0] must be zero.
  static MacroscopicPotential radial(std::vector<double> q, double c,
                                     std::vector<Spectator> spectators = {});
  static MacroscopicPotential hermitian(HermitianPoly q, double c,
                                        std::vector<Spectator> spectators = {});

  PotentialKind kind() const { return kind_; }
  bool is_radial() const { return kind_ == PotentialKind::kRadial; }
  double c() const { return c_; }
  const std::vector<Spectator>& spectators() const { return spectators_; }
  const HermitianPoly& taylor() const { return poly_; }
  // Radial coefficients (index m multiplies r^{2m}); empty for hermitian kind.
  const std::vector<double>& radial_coeffs() const { return radial_; }

  double q(cplx zeta) const;
  // Radial kind only.
  double q_radial(double r) const;
  // r Q'(r) / 2 = integral of Delta Q over D(0, r) in dA units (radial only).
  double disk_mass(double r) const;
  double laplacian(cplx zeta) const { return laplacian_(zeta); }

  // h(zeta) = sum 2 c_j log|zeta - a_j|.
  double h(cplx zeta) const;
  // n V_n(zeta) = n Q - 2c log|zeta| - h. Returns +inf wherever the weight
  // e^{-n V_n} vanishes or is singular (zeta on a charge).
  double n_vn(cplx zeta, int n) const;

  MacroscopicPotential scaled(double lambda) const;
  MacroscopicPotential with_c(double c) const;
  MacroscopicPotential without_spectators() const;

 private:
  MacroscopicPotential(PotentialKind kind, HermitianPoly poly, std::vector<double> radial,
                       double c, std::vector<Spectator> spectators);
  void validate() const;

  PotentialKind kind_;
  HermitianPoly poly_;
  HermitianPoly laplacian_;
  std::vector<double> radial_;
  double c_;
  std::vector<Spectator> spectators_;
};

// Q = Q_0 + Re H + Q_1.
struct CanonicalDecomposition {
  HomogeneousHermitianPoly q0;
  // h_coeffs[m] multiplies zeta^m, m = 0..2k; h_coeffs[0] = 0.
  std::vector<cplx> h_coeffs;
  HermitianPoly q1;

  cplx h(cplx zeta) const;
  double q1_at(cplx zeta) const { return q1(zeta); }
};

int detect_k(const MacroscopicPotential& q);
CanonicalDecomposition canonical_decompose(const MacroscopicPotential& q, int k);
// Micro-potential V_0 = Q_0 - 2c log|z| read off the canonical decomposition.
MicroscopicPotential microscopic_potential(const MacroscopicPotential& q);

// Scale factor lambda making Delta^k Q_0(0) / (k [(k-1)!]^2) = 1 + c.
double normalization_factor(const MicroscopicPotential& micro);
std::pair<MacroscopicPotential, double> normalize_potential(const MacroscopicPotential& q);

// Returns (Q_0 - 2 Re(kappa z^{2k}), kappa).
std::pair<MicroscopicPotential, cplx> kappa_shift(const MicroscopicPotential& p);

}  // namespace focklab::potentials
