#include "focklab/general_bergman.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <string>

#include "focklab/errors.hpp"

namespace focklab::general {

namespace mp = boost::multiprecision;
using mp_real = mp::cpp_bin_float_50;
using mp_cplx = mp::cpp_complex_50;

namespace {

// Rounding level assumed for the 50-digit arithmetic.
constexpr double kWorkingEpsilon = 1e-48;
constexpr double kMaxDoublingDiscrepancy = 1e-12;

mp_cplx to_mp(cplx z) { return mp_cplx(mp_real(z.real()), mp_real(z.imag())); }
cplx to_double(const mp_cplx& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}
mp_real abs2(const mp_cplx& z) { return z.real() * z.real() + z.imag() * z.imag(); }

// Entries of the moment matrix from trapezoid rules on `points` and
// 2 * `points` nodes. The coarse rule uses every other fine node.
struct Assembly {
  std::vector<mp_cplx> coarse;
  std::vector<mp_cplx> fine;
};

Assembly assemble(const potentials::MicroscopicPotential& p, int n, int points, bool with_fine) {
  const int k = p.k();
  const int nodes = with_fine ? 2 * points : points;
  const int stride = with_fine ? 2 : 1;
  const mp_real two_pi = 2 * boost::math::constants::pi<mp_real>();
  std::vector<mp_real> cos_t(nodes), sin_t(nodes);
  for (int t = 0; t < nodes; ++t) {
    const mp_real theta = two_pi * t / nodes;
    cos_t[t] = cos(theta);
    sin_t[t] = sin(theta);
  }
  auto phase_index = [nodes](long m, int t) {
    long idx = (m * t) % nodes;
    if (idx < 0) idx += nodes;
    return static_cast<int>(idx);
  };

  // q(theta) on the unit circle, and its powers -1/(2k), -(2c+2)/(2k).
  std::vector<mp_real> rho(nodes), f(nodes);
  const mp_real two_k = 2 * k;
  const mp_real c = p.c();
  for (int t = 0; t < nodes; ++t) {
    mp_real q = 0;
    for (const auto& [key, a] : p.q0().poly().terms()) {
      const int idx = phase_index(key.first - key.second, t);
      q += mp_real(a.real()) * cos_t[idx] - mp_real(a.imag()) * sin_t[idx];
    }
    if (q <= 0) throw NotPositiveDefiniteError("Q_0 is not positive on the unit circle");
    const mp_real lq = log(q);
    rho[t] = exp(-lq / two_k);
    f[t] = exp(-(2 * c + 2) * lq / two_k);
  }

  Assembly out;
  out.coarse.assign(static_cast<std::size_t>(n) * n, mp_cplx(0));
  if (with_fine) out.fine.assign(static_cast<std::size_t>(n) * n, mp_cplx(0));
  for (int s = 0; s <= 2 * n - 2; ++s) {
    const mp_real gamma_factor = boost::math::tgamma((s + 2 * c + 2) / two_k) / k;
    const int m_max = std::min(s, 2 * n - 2 - s);
    for (int m = s % 2; m <= m_max; m += 2) {
      mp_real re_c = 0, im_c = 0, re_f = 0, im_f = 0;
      for (int t = 0; t < nodes; ++t) {
        const int idx = phase_index(m, t);
        const mp_real re = f[t] * cos_t[idx];
        const mp_real im = f[t] * sin_t[idx];
        if (t % stride == 0) {
          re_c += re;
          im_c += im;
        } else {
          re_f += re;
          im_f += im;
        }
      }
      const mp_cplx coarse = mp_cplx(re_c, im_c) * gamma_factor / points;
      const mp_cplx fine = mp_cplx(re_c + re_f, im_c + im_f) * gamma_factor / nodes;
      // s = i + j, m = i - j.
      const int i = (s + m) / 2;
      const int j = (s - m) / 2;
      out.coarse[i * n + j] = coarse;
      out.coarse[j * n + i] = conj(coarse);
      if (with_fine) {
        out.fine[i * n + j] = fine;
        out.fine[j * n + i] = conj(fine);
      }
    }
    for (int t = 0; t < nodes; ++t) f[t] *= rho[t];
  }
  return out;
}

}  // namespace

struct MomentMatrix::Impl {
  int n = 0;
  int points = 0;
  std::vector<mp_cplx> a;
  std::vector<mp_real> scale;
  double discrepancy = -1.0;
};

MomentMatrix::MomentMatrix(const potentials::MicroscopicPotential& p, int n,
                           int quadrature_points, bool doubling_check)
    : impl_(std::make_unique<Impl>()) {
  if (n < 1) throw DomainError("moment matrix order must be >= 1");
  if (quadrature_points < 8) throw DomainError("angular quadrature needs >= 8 points");
  impl_->n = n;
  impl_->points = quadrature_points;
  Assembly asm_ = assemble(p, n, quadrature_points, doubling_check);
  impl_->a = std::move(asm_.coarse);
  impl_->scale.resize(n);
  for (int i = 0; i < n; ++i) {
    const mp_real d = impl_->a[i * n + i].real();
    if (d <= 0) throw NotPositiveDefiniteError("non-positive diagonal moment");
    impl_->scale[i] = sqrt(d);
  }
  if (doubling_check) {
    mp_real worst = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const mp_real denom = impl_->scale[i] * impl_->scale[j];
        const mp_real diff = sqrt(abs2(impl_->a[i * n + j] - asm_.fine[i * n + j])) / denom;
        if (diff > worst) worst = diff;
      }
    }
    impl_->discrepancy = static_cast<double>(worst);
    if (impl_->discrepancy > kMaxDoublingDiscrepancy) {
      throw ConvergenceError("angular quadrature unresolved: M vs 2M discrepancy " +
                             std::to_string(impl_->discrepancy));
    }
  }
}

MomentMatrix::~MomentMatrix() = default;
MomentMatrix::MomentMatrix(const MomentMatrix& o) : impl_(std::make_unique<Impl>(*o.impl_)) {}
MomentMatrix& MomentMatrix::operator=(const MomentMatrix& o) {
  if (this != &o) impl_ = std::make_unique<Impl>(*o.impl_);
  return *this;
}
MomentMatrix::MomentMatrix(MomentMatrix&&) noexcept = default;
MomentMatrix& MomentMatrix::operator=(MomentMatrix&&) noexcept = default;

int MomentMatrix::size() const { return impl_->n; }
int MomentMatrix::quadrature_points() const { return impl_->points; }
cplx MomentMatrix::entry(int i, int j) const {
  if (i < 0 || j < 0 || i >= impl_->n || j >= impl_->n) throw DomainError("moment index out of range");
  return to_double(impl_->a[i * impl_->n + j]);
}
double MomentMatrix::scale(int i) const {
  if (i < 0 || i >= impl_->n) throw DomainError("moment index out of range");
  return static_cast<double>(impl_->scale[i]);
}
double MomentMatrix::doubling_discrepancy() const { return impl_->discrepancy; }

MomentMatrix moment_matrix(const potentials::MicroscopicPotential& p, int n,
                           int quadrature_points) {
  return MomentMatrix(p, n, quadrature_points);
}

struct TruncatedKernel::Impl {
  int n = 0;
  std::vector<mp_real> scale;
  std::vector<mp_real> log_scale;
  std::vector<mp_cplx> chol;  // lower triangular, row-major
  std::vector<cplx> g;        // G_ij in double
  double condition = 0.0;
  double accuracy = 0.0;

  // y = C^{-1} v by forward substitution.
  std::vector<mp_cplx> solve(std::vector<mp_cplx> v) const {
    for (int i = 0; i < n; ++i) {
      mp_cplx acc = v[i];
      for (int j = 0; j < i; ++j) acc -= chol[i * n + j] * v[j];
      v[i] = acc / chol[i * n + i].real();
    }
    return v;
  }

  std::vector<mp_cplx> scaled_monomials(cplx z) const {
    std::vector<mp_cplx> v(n);
    const mp_cplx zz = to_mp(z);
    mp_cplx pw(1);
    for (int i = 0; i < n; ++i) {
      v[i] = pw / scale[i];
      pw *= zz;
    }
    return v;
  }
};

TruncatedKernel::TruncatedKernel(const MomentMatrix& a, int order)
    : impl_(std::make_unique<Impl>()) {
  const auto& src = a.impl();
  if (order == 0 || order > src.n || order < -1) throw DomainError("kernel order out of range");
  const int n = order < 0 ? src.n : order;
  const int ld = src.n;
  auto& im = *impl_;
  im.n = n;
  im.scale.assign(src.scale.begin(), src.scale.begin() + n);
  im.log_scale.resize(n);
  for (int i = 0; i < n; ++i) im.log_scale[i] = log(src.scale[i]);

  std::vector<mp_cplx> hat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) hat[i * n + j] = src.a[i * ld + j] / (src.scale[i] * src.scale[j]);
  }

  im.chol.assign(static_cast<std::size_t>(n) * n, mp_cplx(0));
  for (int j = 0; j < n; ++j) {
    mp_real d = hat[j * n + j].real();
    for (int k = 0; k < j; ++k) d -= abs2(im.chol[j * n + k]);
    if (!(d > 0)) {
      throw NotPositiveDefiniteError("moment matrix is not positive definite (pivot " +
                                     std::to_string(j) + ")");
    }
    const mp_real djj = sqrt(d);
    im.chol[j * n + j] = mp_cplx(djj);
    for (int i = j + 1; i < n; ++i) {
      mp_cplx acc = hat[i * n + j];
      for (int k = 0; k < j; ++k) acc -= im.chol[i * n + k] * conj(im.chol[j * n + k]);
      im.chol[i * n + j] = acc / djj;
    }
  }

  // inverse of the scaled matrix: (C^{-1})^H C^{-1}
  std::vector<mp_cplx> cinv(static_cast<std::size_t>(n) * n, mp_cplx(0));
  for (int col = 0; col < n; ++col) {
    std::vector<mp_cplx> e(n, mp_cplx(0));
    e[col] = mp_cplx(1);
    auto y = im.solve(std::move(e));
    for (int i = 0; i < n; ++i) cinv[i * n + col] = y[i];
  }
  std::vector<mp_cplx> hat_inv(static_cast<std::size_t>(n) * n, mp_cplx(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      mp_cplx acc(0);
      for (int k = std::max(i, j); k < n; ++k) acc += conj(cinv[k * n + i]) * cinv[k * n + j];
      hat_inv[i * n + j] = acc;
    }
  }

  mp_real norm_a = 0, norm_inv = 0;
  for (int j = 0; j < n; ++j) {
    mp_real col_a = 0, col_inv = 0;
    for (int i = 0; i < n; ++i) {
      col_a += sqrt(abs2(hat[i * n + j]));
      col_inv += sqrt(abs2(hat_inv[i * n + j]));
    }
    norm_a = std::max(norm_a, col_a);
    norm_inv = std::max(norm_inv, col_inv);
  }
  im.condition = static_cast<double>(norm_a * norm_inv);
  const double quad = src.discrepancy >= 0.0 ? src.discrepancy : 0.0;
  im.accuracy = im.condition * std::max(quad, kWorkingEpsilon);
  if (im.accuracy > kMaxErrorAmplification) {
    throw NotPositiveDefiniteError("moment matrix too ill-conditioned: cond = " +
                                   std::to_string(im.condition));
  }

  // L(z,w) = u(w)^H A^{-1} u(z), so G_ij = (A^{-1})_{ji}.
  im.g.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      im.g[i * n + j] = to_double(hat_inv[j * n + i] / (src.scale[i] * src.scale[j]));
    }
  }
}

TruncatedKernel::~TruncatedKernel() = default;
TruncatedKernel::TruncatedKernel(const TruncatedKernel& o)
    : impl_(std::make_unique<Impl>(*o.impl_)) {}
TruncatedKernel& TruncatedKernel::operator=(const TruncatedKernel& o) {
  if (this != &o) impl_ = std::make_unique<Impl>(*o.impl_);
  return *this;
}
TruncatedKernel::TruncatedKernel(TruncatedKernel&&) noexcept = default;
TruncatedKernel& TruncatedKernel::operator=(TruncatedKernel&&) noexcept = default;

int TruncatedKernel::size() const { return impl_->n; }

cplx TruncatedKernel::coefficient(int i, int j) const {
  if (i < 0 || j < 0 || i >= impl_->n || j >= impl_->n) throw DomainError("kernel index out of range");
  return impl_->g[i * impl_->n + j];
}

cplx TruncatedKernel::kernel(cplx z, cplx w) const {
  const auto yz = impl_->solve(impl_->scaled_monomials(z));
  const auto yw = impl_->solve(impl_->scaled_monomials(w));
  mp_cplx acc(0);
  for (int i = 0; i < impl_->n; ++i) acc += conj(yw[i]) * yz[i];
  return to_double(acc);
}

double TruncatedKernel::diagonal(cplx z) const {
  const auto y = impl_->solve(impl_->scaled_monomials(z));
  mp_real acc = 0;
  for (const auto& v : y) acc += abs2(v);
  return static_cast<double>(acc);
}

double TruncatedKernel::condition_number() const { return impl_->condition; }
double TruncatedKernel::accuracy_estimate() const { return impl_->accuracy; }

double TruncatedKernel::tail_indicator(cplx z) const {
  const int n = impl_->n;
  double row = 0.0;
  for (int j = 0; j < n; ++j) row += std::norm(impl_->g[(n - 1) * n + j]);
  return std::pow(std::abs(z), 2.0 * (n - 1)) * std::sqrt(row);
}

double TruncatedKernel::density(const potentials::MicroscopicPotential& p, cplx z) const {
  const auto& im = *impl_;
  const double c = p.c();
  const double r = std::abs(z);
  std::vector<mp_cplx> v(im.n, mp_cplx(0));
  if (r == 0.0) {
    if (c > 0.0) return 0.0;
    if (c < 0.0) throw DivergenceError("Bergman density diverges at 0 for c < 0");
    v[0] = mp_cplx(1 / im.scale[0]);
  } else {
    const mp_real log_r = log(mp_real(r));
    const mp_real half_q0 = mp_real(p.q0()(z)) / 2;
    const mp_real theta = mp_real(std::arg(z));
    for (int i = 0; i < im.n; ++i) {
      const mp_real mag = exp((i + mp_real(c)) * log_r - half_q0 - im.log_scale[i]);
      v[i] = mp_cplx(mag * cos(i * theta), mag * sin(i * theta));
    }
  }
  const auto y = im.solve(std::move(v));
  mp_real acc = 0;
  for (const auto& e : y) acc += abs2(e);
  return static_cast<double>(acc);
}

TruncatedKernel truncated_kernel(const MomentMatrix& a, int order) {
  return TruncatedKernel(a, order);
}

double bergman_density(const TruncatedKernel& tk, const potentials::MicroscopicPotential& p,
                       cplx z) {
  return tk.density(p, z);
}

}  // namespace focklab::general
