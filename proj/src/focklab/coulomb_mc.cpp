#include "focklab/coulomb_mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "focklab/equilibrium.hpp"
#include "focklab/errors.hpp"
#include "focklab/finite_kernel.hpp"

namespace focklab::mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double energy(std::span<const cplx> points, const potentials::MacroscopicPotential& q) {
  const int n = static_cast<int>(points.size());
  double h = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double v = q.n_vn(points[i], n);
    if (!std::isfinite(v)) return kInf;
    h += v;
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = std::abs(points[i] - points[j]);
      if (d == 0.0) return kInf;
      h -= 2.0 * std::log(d);
    }
  }
  return h;
}

double energy_change(std::span<const cplx> points, std::size_t i, cplx to,
                     const potentials::MacroscopicPotential& q) {
  const int n = static_cast<int>(points.size());
  const double v_new = q.n_vn(to, n);
  if (!std::isfinite(v_new)) return kInf;
  const cplx from = points[i];
  double dh = v_new - q.n_vn(from, n);
  for (std::size_t l = 0; l < points.size(); ++l) {
    if (l == i) continue;
    const double d_new = std::abs(to - points[l]);
    if (d_new == 0.0) return kInf;
    dh += 2.0 * (std::log(std::abs(from - points[l])) - std::log(d_new));
  }
  return dh;
}

IntensityHistogram::IntensityHistogram(HistogramSpec spec, long n_points, long planned_sweeps)
    : kind_(spec.kind), bins_(spec.bins), n_(n_points), planned_(planned_sweeps) {
  if (spec.bins < 1) throw DomainError("histogram needs at least one bin");
  if (!(spec.extent > 0.0) || !std::isfinite(spec.extent)) {
    throw DomainError("histogram extent must be positive");
  }
  if (planned_sweeps < 1) throw DomainError("histogram needs at least one planned sweep");
  const double lo = kind_ == HistogramKind::kRadial ? 0.0 : -spec.extent;
  for (int b = 0; b <= bins_; ++b) edges_.push_back(lo + (spec.extent - lo) * b / bins_);
  const std::size_t cells =
      kind_ == HistogramKind::kRadial ? bins_ : static_cast<std::size_t>(bins_) * bins_;
  counts_.assign(cells, 0);
  const int nb = static_cast<int>(std::min<long>(kBatches, planned_sweeps));
  batches_.assign(nb, Batch{0, std::vector<std::uint64_t>(cells, 0)});
}

long IntensityHistogram::sweeps() const {
  long s = 0;
  for (const auto& b : batches_) s += b.sweeps;
  return s;
}

long IntensityHistogram::bin_of(cplx z) const {
  const double lo = edges_.front();
  const double width = (edges_.back() - lo) / bins_;
  auto index = [&](double x) -> long {
    if (!(x >= lo) || x >= edges_.back()) return -1;
    return std::min<long>(static_cast<long>((x - lo) / width), bins_ - 1);
  };
  if (kind_ == HistogramKind::kRadial) return index(std::abs(z));
  const long ix = index(z.real());
  const long iy = index(z.imag());
  if (ix < 0 || iy < 0) return -1;
  return iy * bins_ + ix;
}

void IntensityHistogram::record(std::span<const cplx> points, long sweep_index) {
  if (sweep_index < 0 || sweep_index >= planned_) throw DomainError("sweep index out of range");
  const std::size_t nb = batches_.size();
  auto& batch = batches_[static_cast<std::size_t>(sweep_index) * nb / planned_];
  ++batch.sweeps;
  for (const cplx& z : points) {
    const long b = bin_of(z);
    if (b < 0) {
      ++overflow_;
      continue;
    }
    ++counts_[b];
    ++batch.counts[b];
  }
}

double IntensityHistogram::area(std::size_t bin) const {
  if (kind_ == HistogramKind::kRadial) {
    return edges_[bin + 1] * edges_[bin + 1] - edges_[bin] * edges_[bin];
  }
  const double w = edges_[1] - edges_[0];
  return w * w / M_PI;
}

double IntensityHistogram::intensity(std::size_t bin) const {
  const long s = sweeps();
  if (s == 0) return 0.0;
  return static_cast<double>(counts_.at(bin)) / (static_cast<double>(s) * area(bin));
}

double IntensityHistogram::standard_error(std::size_t bin) const {
  std::vector<double> means;
  for (const auto& b : batches_) {
    if (b.sweeps > 0) means.push_back(static_cast<double>(b.counts.at(bin)) / b.sweeps);
  }
  if (means.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  // Sorted so that the value does not depend on merge order.
  std::sort(means.begin(), means.end());
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= static_cast<double>(means.size());
  double ss = 0.0;
  for (double m : means) ss += (m - mean) * (m - mean);
  const double k = static_cast<double>(means.size());
  return std::sqrt(ss / (k - 1.0) / k) / area(bin);
}

void IntensityHistogram::merge(const IntensityHistogram& other) {
  if (other.kind_ != kind_ || other.edges_ != edges_ || other.n_ != n_) {
    throw DomainError("cannot merge histograms with different binning");
  }
  for (std::size_t b = 0; b < counts_.size(); ++b) counts_[b] += other.counts_[b];
  overflow_ += other.overflow_;
  batches_.insert(batches_.end(), other.batches_.begin(), other.batches_.end());
  planned_ += other.planned_;
}

IntensityHistogram IntensityHistogram::rescaled(double rn) const {
  if (!(rn > 0.0) || !std::isfinite(rn)) throw DomainError("rescaling factor must be positive");
  IntensityHistogram out = *this;
  for (auto& e : out.edges_) e /= rn;
  return out;
}

IntensityHistogram rescaled_histogram(const IntensityHistogram& h, double rn) {
  return h.rescaled(rn);
}

void EnsembleConfig::validate() const {
  if (n < 1) throw DomainError("n must be >= 1");
  if (n > 100000) throw DomainError("n is too large for the Metropolis sampler");
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("proposal step must be positive");
  if (sweeps < 1) throw DomainError("sweeps must be >= 1");
  if (burn_in < 0) throw DomainError("burn-in must be >= 0");
  if (histogram.bins < 1 || !(histogram.extent > 0.0)) throw DomainError("bad histogram spec");
  if (moduli_every < 0) throw DomainError("moduli_every must be >= 0");
}

McmcResult run_mcmc(const EnsembleConfig& cfg) {
  cfg.validate();
  const auto& q = cfg.potential;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Start from a uniform configuration on the droplet (radius 1 when Q is
  // not radial), redrawing the rare point with infinite energy.
  const double r_init = q.is_radial() ? equilibrium::droplet_radius(q) : 1.0;
  std::vector<cplx> pts(static_cast<std::size_t>(cfg.n));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int attempt = 0;; ++attempt) {
      const double r = r_init * std::sqrt(uniform01(rng));
      const double t = 2.0 * M_PI * uniform01(rng);
      pts[i] = std::polar(r, t);
      if (std::isfinite(energy(std::span<const cplx>(pts.data(), i + 1), q))) break;
      if (attempt > 1000) throw ConvergenceError("could not place an initial configuration");
    }
  }

  McmcResult res;
  res.histogram = IntensityHistogram(cfg.histogram, cfg.n, cfg.sweeps);
  double step = cfg.step;
  long accepted = 0, proposed = 0;
  long window_acc = 0, window_prop = 0;

  auto sweep = [&](long& acc, long& prop) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const cplx to = pts[i] + step * cplx(gauss(rng), gauss(rng));
      const double dh = energy_change(pts, i, to, q);
      ++prop;
      if (dh <= 0.0 || (std::isfinite(dh) && uniform01(rng) < std::exp(-dh))) {
        pts[i] = to;
        ++acc;
      }
    }
  };

  for (long s = 0; s < cfg.burn_in; ++s) {
    sweep(window_acc, window_prop);
    if (cfg.tune_step && (s + 1) % 50 == 0) {
      const double rate = static_cast<double>(window_acc) / static_cast<double>(window_prop);
      step *= std::exp(rate - kTargetAcceptance);
      window_acc = window_prop = 0;
    }
  }
  for (long s = 0; s < cfg.sweeps; ++s) {
    sweep(accepted, proposed);
    res.histogram.record(pts, s);
    if (cfg.moduli_every > 0 && s % cfg.moduli_every == 0) {
      for (const cplx& z : pts) res.moduli.push_back(std::abs(z));
    }
  }
  res.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(proposed);
  res.step = step;
  if (res.acceptance_rate < 0.2 || res.acceptance_rate > 0.6) {
    std::ostringstream os;
    os << "acceptance rate " << res.acceptance_rate << " outside [0.2, 0.6]";
    res.warnings.push_back(os.str());
  }
  if (res.histogram.overflow() > 0) {
    std::ostringstream os;
    os << res.histogram.overflow() << " recorded points fell outside the histogram";
    res.warnings.push_back(os.str());
  }
  return res;
}

McmcResult run_chains(const EnsembleConfig& cfg, int chains, int threads) {
  if (chains < 1) throw DomainError("need at least one chain");
  cfg.validate();
  threads = std::max(1, std::min(threads, chains));
  std::vector<EnsembleConfig> cfgs(chains, cfg);
  std::uint64_t state = cfg.seed;
  for (auto& c : cfgs) c.seed = splitmix64(state);

  std::vector<McmcResult> results(chains);
  std::vector<std::exception_ptr> errors(chains);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int c = t; c < chains; c += threads) {
        try {
          results[c] = run_mcmc(cfgs[c]);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  McmcResult out = std::move(results[0]);
  double acc = out.acceptance_rate;
  for (int c = 1; c < chains; ++c) {
    out.histogram.merge(results[c].histogram);
    out.moduli.insert(out.moduli.end(), results[c].moduli.begin(), results[c].moduli.end());
    out.warnings.insert(out.warnings.end(), results[c].warnings.begin(), results[c].warnings.end());
    acc += results[c].acceptance_rate;
  }
  out.acceptance_rate = acc / chains;
  return out;
}

std::vector<double> sample_radial_exact(const potentials::MacroscopicPotential& q, long n,
                                        std::uint64_t seed, long draws) {
  if (!q.is_radial() || !q.spectators().empty()) {
    throw DomainError("exact sampling needs a radial potential without spectators");
  }
  if (n < 1 || draws < 1) throw DomainError("n and draws must be >= 1");
  constexpr int kNodes = 2048;
  std::mt19937_64 rng(seed);
  std::vector<double> out(static_cast<std::size_t>(n * draws));
  for (long j = 0; j < n; ++j) {
    const finite::RadialWeight w(q, 2.0 * static_cast<double>(j) + 2.0 * q.c() + 1.0, n);
    std::vector<double> t(kNodes + 1);
    for (int i = 0; i <= kNodes; ++i) t[i] = w.lower() + (w.upper() - w.lower()) * i / kNodes;
    const auto cdf = w.cumulative(t);
    for (long d = 0; d < draws; ++d) {
      const double u = uniform01(rng);
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const std::size_t k = std::clamp<std::size_t>(it - cdf.begin(), 1, kNodes);
      const double span = cdf[k] - cdf[k - 1];
      const double frac = span > 0.0 ? (u - cdf[k - 1]) / span : 0.5;
      out[static_cast<std::size_t>(d * n + j)] = std::exp(t[k - 1] + frac * (t[k] - t[k - 1]));
    }
  }
  return out;
}

}  // namespace focklab::mc
