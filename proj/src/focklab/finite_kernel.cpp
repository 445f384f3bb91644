#include "focklab/finite_kernel.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "focklab/equilibrium.hpp"
#include "focklab/errors.hpp"
#include "focklab/radial_bergman.hpp"
#include "focklab/special_fn.hpp"

namespace focklab::finite {

namespace {

constexpr int kPanels = 32;

// Composite 30-point Gauss-Legendre on `panels` equal panels. The integrand is
// smooth and confined to the window, so doubling the panel count is a reliable
// error estimate.
double integrate_panels(const RadialWeight& w, double a, double b, int panels) {
  auto f = [&](double t) { return std::exp(w.log_g(t) - w.peak_log()); };
  const double h = (b - a) / panels;
  special_fn::detail::Accumulator acc;
  for (int p = 0; p < panels; ++p) {
    acc.add(boost::math::quadrature::gauss<double, 30>::integrate(f, a + p * h, a + (p + 1) * h));
  }
  return acc.value();
}

double integrate_window(const RadialWeight& w, double a, double b, double* err) {
  const double coarse = integrate_panels(w, a, b, kPanels / 2);
  const double fine = integrate_panels(w, a, b, kPanels);
  *err = std::abs(fine - coarse);
  return fine;
}

}  // namespace

RadialWeight::RadialWeight(const potentials::MacroscopicPotential& q, double power, long n)
    : q_(&q), power_(power), n_(static_cast<double>(n)) {
  if (!q.is_radial()) throw DomainError("radial weight needs a radial potential");
  if (!(power > -1.0)) throw DomainError("radial weight exponent must exceed -1");
  if (n < 1) throw DomainError("n must be >= 1");
  // d/dt log g = (power + 1) - 2 n disk_mass(e^t), decreasing in t.
  auto slope = [&](double t) { return (power_ + 1.0) - 2.0 * n_ * q.disk_mass(std::exp(t)); };
  double lo = -1.0, hi = 1.0;
  for (int i = 0; slope(lo) <= 0.0; ++i) {
    lo -= 2.0 * (i + 1);
    if (i > 200) throw ConvergenceError("radial weight peak not bracketed");
  }
  for (int i = 0; slope(hi) >= 0.0; ++i) {
    hi += 1.0;
    if (i > 700) throw ConvergenceError("radial weight peak not bracketed (growth condition)");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (slope(mid) > 0.0 ? lo : hi) = mid;
  }
  peak_t_ = 0.5 * (lo + hi);
  peak_log_ = log_g(peak_t_);
  double step = 0.25;
  lower_ = peak_t_;
  while (log_g(lower_) > peak_log_ - kWindowDepth) {
    lower_ -= step;
    step *= 1.5;
  }
  step = 0.25;
  upper_ = peak_t_;
  while (log_g(upper_) > peak_log_ - kWindowDepth) {
    upper_ += step;
    step *= 1.5;
  }
}

double RadialWeight::log_g(double t) const {
  return (power_ + 1.0) * t - n_ * q_->q_radial(std::exp(t));
}

double RadialWeight::log_integral() const {
  double err_l = 0.0, err_r = 0.0;
  const double left = integrate_window(*this, lower_, peak_t_, &err_l);
  const double right = integrate_window(*this, peak_t_, upper_, &err_r);
  const double total = left + right;
  if (!(total > 0.0) || (err_l + err_r) > 1e-12 * total) {
    throw ConvergenceError("radial moment quadrature did not converge");
  }
  return std::log(2.0) + peak_log_ + std::log(total);
}

std::vector<double> RadialWeight::cumulative(std::span<const double> t_nodes) const {
  std::vector<double> out(t_nodes.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 1; i < t_nodes.size(); ++i) {
    acc += integrate_panels(*this, t_nodes[i - 1], t_nodes[i], 1);
    out[i] = acc;
  }
  if (!(acc > 0.0)) throw ConvergenceError("empty radial distribution");
  for (auto& v : out) v /= acc;
  return out;
}

FiniteKernel::FiniteKernel(const potentials::MacroscopicPotential& q, long n) : q_(q), n_(n) {
  if (!q.is_radial()) throw DomainError("exact finite-n kernels need a radial potential");
  if (!q.spectators().empty()) {
    throw DomainError("exact finite-n kernels do not support spectator charges");
  }
  if (n < 1) throw DomainError("n must be >= 1");
  log_norms_.reserve(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) {
    RadialWeight w(q_, 2.0 * static_cast<double>(j) + 2.0 * q_.c() + 1.0, n);
    log_norms_.push_back(w.log_integral());
  }
}

double FiniteKernel::intensity_radial(double r) const {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("radius must be finite and >= 0");
  const double c = q_.c();
  if (r == 0.0) {
    if (c > 0.0) return 0.0;
    if (c < 0.0) throw DivergenceError("one-point intensity diverges at 0 for c < 0");
    return std::exp(-log_norms_[0]);
  }
  const double log_r = std::log(r);
  const double nq = static_cast<double>(n_) * q_.q_radial(r);
  special_fn::detail::Accumulator acc;
  for (long j = 0; j < n_; ++j) {
    acc.add(std::exp((2.0 * static_cast<double>(j) + 2.0 * c) * log_r - nq - log_norms_[j]));
  }
  return acc.value();
}

double FiniteKernel::intensity(cplx zeta) const { return intensity_radial(std::abs(zeta)); }

double FiniteKernel::rescaled_intensity(cplx z, double rn) const {
  if (!(rn > 0.0)) throw DomainError("microscopic scale must be positive");
  return rn * rn * intensity_radial(rn * std::abs(z));
}

double FiniteKernel::annulus_mass(double r_lo, double r_hi) const {
  if (!(r_lo >= 0.0) || !(r_hi > r_lo)) throw DomainError("annulus needs 0 <= r_lo < r_hi");
  // In s = r^2 the integrand |zeta|^{2c}-singularity becomes s^c, integrable
  // for c > -1; substitute s = u^{1/(1+c)} near 0 to remove it.
  const double c = q_.c();
  const double e = 1.0 / (1.0 + c);
  auto f = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double s = std::pow(u, e);
    const double r = std::sqrt(s);
    // intensity * ds, with ds = e u^{e-1} du; the r^{2c} factor cancels u^{e-1}.
    return intensity_radial(r) * e * std::pow(u, e - 1.0);
  };
  const double u_lo = std::pow(r_lo * r_lo, 1.0 + c);
  const double u_hi = std::pow(r_hi * r_hi, 1.0 + c);
  const int panels = 64;
  const double h = (u_hi - u_lo) / panels;
  special_fn::detail::Accumulator acc;
  int first = 0;
  if (u_lo == 0.0) {
    // For c > 0 the integrand carries powers u^{j/(1+c)}, not smooth at 0:
    // grade the first panel geometrically towards the origin.
    double hi = h;
    for (int level = 0; level < 48; ++level) {
      acc.add(boost::math::quadrature::gauss<double, 30>::integrate(f, 0.5 * hi, hi));
      hi *= 0.5;
    }
    acc.add(boost::math::quadrature::gauss<double, 30>::integrate(f, 0.0, hi));
    first = 1;
  }
  for (int p = first; p < panels; ++p) {
    acc.add(boost::math::quadrature::gauss<double, 30>::integrate(f, u_lo + p * h, u_lo + (p + 1) * h));
  }
  return acc.value();
}

double FiniteKernel::mass() const {
  // Past the outermost weight window the intensity is below e^{-60} relative.
  const RadialWeight outer(q_, 2.0 * static_cast<double>(n_ - 1) + 2.0 * q_.c() + 1.0, n_);
  const double r_max = std::exp(outer.upper());
  // Split where the density changes character: bulk and edge.
  const RadialWeight inner(q_, 2.0 * q_.c() + 1.0, n_);
  const double r_mid = std::min(std::exp(inner.peak_t()), 0.5 * r_max);
  special_fn::detail::Accumulator acc;
  const int pieces = 16;
  double prev = 0.0;
  acc.add(annulus_mass(0.0, r_mid));
  prev = r_mid;
  for (int i = 1; i <= pieces; ++i) {
    const double r = r_mid + (r_max - r_mid) * i / pieces;
    acc.add(annulus_mass(prev, r));
    prev = r;
  }
  return acc.value();
}

double FiniteKernel::annulus_average(double r_lo, double r_hi) const {
  return annulus_mass(r_lo, r_hi) / (r_hi * r_hi - r_lo * r_lo);
}

FiniteKernel finite_moments(const potentials::MacroscopicPotential& q, long n) {
  return FiniteKernel(q, n);
}

ConvergenceReport convergence_report(const potentials::MacroscopicPotential& q,
                                     std::span<const long> n_list,
                                     std::span<const double> z_grid) {
  if (!q.is_radial()) throw DomainError("convergence report needs a radial potential");
  if (n_list.empty() || z_grid.empty()) throw DomainError("empty n_list or z grid");
  ConvergenceReport rep;
  rep.c = q.c();
  for (double z : z_grid) {
    if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("z grid values must be moduli >= 0");
    if (z == 0.0 && rep.c < 0.0) {
      throw DomainError("z grid contains 0 but c < 0: the densities diverge there");
    }
  }
  const auto [qn, lambda] = potentials::normalize_potential(q);
  rep.lambda = lambda;
  const auto micro = potentials::microscopic_potential(qn);
  rep.k = micro.k();
  if (!micro.is_radial(&rep.amplitude)) throw DomainError("radial Q produced a non-radial Q_0");
  std::size_t nonzero = 0;
  for (double v : q.radial_coeffs()) nonzero += (v != 0.0);
  rep.homogeneous = nonzero == 1;
  rep.n_list.assign(n_list.begin(), n_list.end());
  rep.z_grid.assign(z_grid.begin(), z_grid.end());
  for (double z : z_grid) rep.r0.push_back(radial::bergman_function_r0(rep.k, rep.c, rep.amplitude, z));

  for (long n : n_list) {
    const double rn = equilibrium::microscopic_scale(qn, n);
    const FiniteKernel fk(qn, n);
    std::vector<double> row;
    double sup = 0.0;
    for (std::size_t g = 0; g < z_grid.size(); ++g) {
      const double v = fk.rescaled_intensity(cplx(z_grid[g], 0.0), rn);
      row.push_back(v);
      sup = std::max(sup, std::abs(v - rep.r0[g]));
      if (rep.homogeneous) {
        const double trunc = radial::truncated_r0(rep.k, rep.c, rep.amplitude, z_grid[g], n);
        const double dev = std::abs(v - trunc) / std::max(1.0, std::abs(trunc));
        rep.identity_deviation = std::max(rep.identity_deviation, dev);
      }
    }
    rep.r_n.push_back(rn);
    rep.values.push_back(std::move(row));
    rep.sup_error.push_back(sup);
  }
  rep.identity_holds = rep.homogeneous && rep.identity_deviation <= 1e-12;
  const auto& e = rep.sup_error;
  auto step_ok = [&](int i) { return e[i] < e[i - 1] || e[i] <= kConvergedFloor; };
  int from = static_cast<int>(e.size()) - 1;
  while (from > 0 && step_ok(from)) --from;
  // from is now the last failing index (or 0); the run starts there.
  if (e.size() == 1 || step_ok(static_cast<int>(e.size()) - 1)) rep.decreasing_from = from;
  return rep;
}

}  // namespace focklab::finite
