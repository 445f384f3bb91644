#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace focklab {

using cplx = std::complex<double>;

// One coefficient a_{ij} of z^i conj(z)^j.
struct HermitianTerm {
  int i;
  int j;
  cplx coeff;
};

// Real-valued polynomial sum a_{ij} z^i conj(z)^j with a_{ij} = conj(a_{ji}).
// The same coefficients define the polarization sum a_{ij} z^i conj(w)^j.
class HermitianPoly {
 public:
  HermitianPoly() = default;

  // Missing mirror terms (j, i) are filled with the conjugate; a mirror that
  // is present but not the conjugate, or a non-real diagonal coefficient,
  // throws DomainError. Coefficients with |a| == 0 are dropped.
  static HermitianPoly from_terms(const std::vector<HermitianTerm>& terms);

  // Sum q_m |z|^{2m}, with q[m] the coefficient of |z|^{2m}.
  static HermitianPoly radial(const std::vector<double>& q);

  double operator()(cplx z) const;
  cplx polarized(cplx z, cplx w) const;

  cplx coeff(int i, int j) const;
  const std::map<std::pair<int, int>, cplx>& terms() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }
  int max_degree() const;
  // Smallest total degree carrying a nonzero coefficient; -1 when empty.
  int min_degree() const;

  HermitianPoly homogeneous_part(int degree) const;
  // Terms with i >= 1 and j >= 1 only.
  HermitianPoly mixed_part() const;
  // Delta = d dbar applied termwise: a_{ij} z^i zbar^j -> i j a_{ij} z^{i-1} zbar^{j-1}.
  HermitianPoly laplacian() const;
  HermitianPoly scaled(double factor) const;
  HermitianPoly operator+(const HermitianPoly& other) const;
  HermitianPoly operator-(const HermitianPoly& other) const;
  // Drops the single coefficient pair (i, j), (j, i).
  HermitianPoly without(int i, int j) const;

 private:
  std::map<std::pair<int, int>, cplx> coeffs_;
};

// Restriction of a homogeneous Hermitian polynomial to the unit circle,
// q(theta) = sum a_{ij} e^{i (i - j) theta}.
struct AngularMinimum {
  double theta;
  double value;
  double derivative;  // q'(theta) at the refined minimizer
};

class HomogeneousHermitianPoly {
 public:
  HomogeneousHermitianPoly() = default;
  // Throws DomainError unless every term has total degree `degree` (even).
  HomogeneousHermitianPoly(int degree, HermitianPoly poly);

  int degree() const { return degree_; }
  int k() const { return degree_ / 2; }
  const HermitianPoly& poly() const { return poly_; }

  double operator()(cplx z) const { return poly_(z); }
  cplx coeff(int i, int j) const { return poly_.coeff(i, j); }

  double on_circle(double theta) const;
  double on_circle_d1(double theta) const;
  double on_circle_d2(double theta) const;

  // 512-point scan of q(theta) followed by guarded Newton refinement of the
  // best sample.
  AngularMinimum min_on_circle() const;
  bool positive_definite(double threshold = 1e-10) const;

 private:
  int degree_ = 0;
  HermitianPoly poly_;
};

}  // namespace focklab
