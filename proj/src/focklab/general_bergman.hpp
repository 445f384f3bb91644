#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "focklab/potentials.hpp"

namespace focklab::general {

// A_{ij} = int z^i conj(z)^j |z|^{2c} e^{-Q_0(z)} dA for 0 <= i, j < N.
// The radial integral is a Gamma function; the angular one is an M-point
// periodic trapezoid rule. Entries are assembled in 50-digit arithmetic
// because the monomial Gram matrix is ill-conditioned for anisotropic Q_0.
class MomentMatrix {
 public:
  MomentMatrix(const potentials::MicroscopicPotential& p, int n, int quadrature_points = 512,
               bool doubling_check = true);
  ~MomentMatrix();
  MomentMatrix(const MomentMatrix&);
  MomentMatrix& operator=(const MomentMatrix&);
  MomentMatrix(MomentMatrix&&) noexcept;
  MomentMatrix& operator=(MomentMatrix&&) noexcept;

  int size() const;
  int quadrature_points() const;
  cplx entry(int i, int j) const;
  // s_i = sqrt(A_ii), the preconditioning scale of monomial i.
  double scale(int i) const;
  // max |A^_M - A^_{2M}| over the unit-diagonal scaled matrices, or -1 when
  // the doubling check was skipped.
  double doubling_discrepancy() const;

  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  std::unique_ptr<Impl> impl_;
};

MomentMatrix moment_matrix(const potentials::MicroscopicPotential& p, int n,
                           int quadrature_points = 512);

// L^{(N)}(z, w) = sum_{i,j<N} G_{ij} z^i conj(w)^j, the reproducing kernel of
// polynomials of degree < N in L^2(|z|^{2c} e^{-Q_0} dA).
class TruncatedKernel {
 public:
  // Refuses (NotPositiveDefiniteError) when the Cholesky factorization of the
  // scaled moment matrix fails or when cond * working precision exceeds
  // kMaxErrorAmplification.
  // `order` selects the leading order x order block (polynomials of degree
  // < order); -1 uses the whole matrix.
  explicit TruncatedKernel(const MomentMatrix& a, int order = -1);
  ~TruncatedKernel();
  TruncatedKernel(const TruncatedKernel&);
  TruncatedKernel& operator=(const TruncatedKernel&);
  TruncatedKernel(TruncatedKernel&&) noexcept;
  TruncatedKernel& operator=(TruncatedKernel&&) noexcept;

  static constexpr double kMaxErrorAmplification = 1e-10;

  int size() const;
  cplx coefficient(int i, int j) const;
  cplx kernel(cplx z, cplx w) const;
  double diagonal(cplx z) const;
  // 1-norm condition number of the unit-diagonal scaled moment matrix.
  double condition_number() const;
  // Estimated relative error of kernel values: cond * (quadrature + rounding).
  double accuracy_estimate() const;
  // |z|^{2(N-1)} times the norm of the last row of G: size of the highest
  // retained term, a warning sign that the truncation is too short at z.
  double tail_indicator(cplx z) const;

  // Density L(z,z) |z|^{2c} e^{-Q_0(z)}, assembled in log-damped form.
  double density(const potentials::MicroscopicPotential& p, cplx z) const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

TruncatedKernel truncated_kernel(const MomentMatrix& a, int order = -1);

// R_0^{(N)}(z) = L^{(N)}(z,z) |z|^{2c} e^{-Q_0(z)}. Throws DivergenceError at
// z = 0 for c < 0.
double bergman_density(const TruncatedKernel& tk, const potentials::MicroscopicPotential& p,
                       cplx z);

}  // namespace focklab::general
