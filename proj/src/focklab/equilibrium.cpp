#include "focklab/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "focklab/errors.hpp"
#include "focklab/stats.hpp"

namespace focklab::equilibrium {

namespace {

constexpr int kMaxBisection = 200;

// Smallest r > 0 with disk_mass(r) = target, to the last representable bit.
double solve_disk_mass(const potentials::MacroscopicPotential& q, double target) {
  if (!q.is_radial()) throw DomainError("equilibrium solver needs a radial potential");
  double lo = 0.0;
  double hi = 1.0;
  int expansions = 0;
  while (q.disk_mass(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++expansions > 200) {
      throw ConvergenceError("no droplet radius in search bracket (growth condition violated)");
    }
  }
  for (int it = 0; it < kMaxBisection; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (q.disk_mass(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double droplet_radius(const potentials::MacroscopicPotential& q) { return solve_disk_mass(q, 1.0); }

double modulus_tau0(const HomogeneousHermitianPoly& q0) {
  const HermitianPoly lap = q0.poly().laplacian();
  constexpr int kPoints = 512;
  double sum = 0.0;
  for (int t = 0; t < kPoints; ++t) {
    sum += lap(std::polar(1.0, 2.0 * std::numbers::pi * t / kPoints));
  }
  const double mean = sum / kPoints;
  const int k = q0.k();
  if (!(mean > 0.0)) throw NotPositiveDefiniteError("Delta Q_0 has non-positive angular mean");
  return std::pow(mean / k, -1.0 / (2.0 * k));
}

double microscopic_scale(const potentials::MacroscopicPotential& q, long n) {
  if (n < 1) throw DomainError("particle number must be >= 1");
  const double r = solve_disk_mass(q, (1.0 + q.c()) / static_cast<double>(n));
  const double radius = droplet_radius(q);
  if (r >= radius) {
    throw DomainError("microscopic scale " + std::to_string(r) + " lies outside the droplet (R = " +
                      std::to_string(radius) + "); n is too small");
  }
  return r;
}

EquilibriumData::EquilibriumData(const potentials::MacroscopicPotential& q)
    : q_(q), radius_(equilibrium::droplet_radius(q)) {
  const auto micro = potentials::microscopic_potential(q);
  k_ = micro.k();
  tau0_ = modulus_tau0(micro.q0());
}

double EquilibriumData::density(double r) const {
  if (r < 0.0 || r > radius_) return 0.0;
  return q_.laplacian(cplx(r, 0.0));
}

MicroscaleCheck microscale_asymptotic_check(const potentials::MacroscopicPotential& q,
                                            std::span<const long> n_list) {
  MicroscaleCheck out;
  const auto micro = potentials::microscopic_potential(q);
  out.k = micro.k();
  out.c = q.c();
  out.tau0 = modulus_tau0(micro.q0());
  const double inv2k = 1.0 / (2.0 * out.k);
  const double base = out.tau0 * std::pow(1.0 + out.c, inv2k);
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw DomainError("n_list must be increasing");
    const long n = n_list[i];
    const double rn = microscopic_scale(q, n);
    const double e = rn * std::pow(static_cast<double>(n), inv2k) / base - 1.0;
    out.n.push_back(n);
    out.r_n.push_back(rn);
    out.error.push_back(e);
    out.scaled_error.push_back(std::abs(e) * std::pow(static_cast<double>(n), inv2k));
  }
  if (out.n.empty()) return out;
  out.fitted_constant = *std::max_element(out.scaled_error.begin(), out.scaled_error.end());
  out.identically_zero =
      std::all_of(out.error.begin(), out.error.end(), [](double e) { return std::abs(e) < 1e-12; });
  out.bounded = true;
  for (std::size_t i = 1; i < out.scaled_error.size(); ++i) {
    if (out.scaled_error[i] > out.scaled_error[i - 1] + 1e-12) out.bounded = false;
  }
  if (!out.identically_zero && out.n.size() >= 2) {
    std::vector<double> ln_n, ln_e;
    for (std::size_t i = 0; i < out.n.size(); ++i) {
      if (std::abs(out.error[i]) < 1e-15) continue;
      ln_n.push_back(std::log(static_cast<double>(out.n[i])));
      ln_e.push_back(std::log(std::abs(out.error[i])));
    }
    if (ln_n.size() >= 2) out.empirical_rate = stats::fit_line(ln_n, ln_e).slope;
  }
  return out;
}

}  // namespace focklab::equilibrium
