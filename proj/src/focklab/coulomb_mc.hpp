#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "focklab/potentials.hpp"

namespace focklab::mc {

// H_n = sum_{j != k} log 1/|zeta_j - zeta_k| + sum_j n V_n(zeta_j), with
// n = points.size(). +inf for coincident points or points on a singularity
// with vanishing weight.
double energy(std::span<const cplx> points, const potentials::MacroscopicPotential& q);

// H_n(after moving point i to `to`) - H_n(before).
double energy_change(std::span<const cplx> points, std::size_t i, cplx to,
                     const potentials::MacroscopicPotential& q);

enum class HistogramKind { kRadial, kPlanar };

struct HistogramSpec {
  HistogramKind kind = HistogramKind::kRadial;
  int bins = 40;         // radial bins, or bins per axis for planar
  double extent = 2.0;   // r_max, or half-width of the square [-L, L]^2
};

// Counts of points per bin, recorded once per sweep. Intensity estimates use
// the area convention dA = dx dy / pi. Standard errors are batch means over
// kBatches consecutive stretches of the chain.
class IntensityHistogram {
 public:
  static constexpr int kBatches = 100;

  IntensityHistogram() = default;
  IntensityHistogram(HistogramSpec spec, long n_points, long planned_sweeps);

  HistogramKind kind() const { return kind_; }
  int bins_per_axis() const { return bins_; }
  std::size_t bin_count() const { return counts_.size(); }
  long n_points() const { return n_; }
  long sweeps() const;
  // Radial: edges()[b], edges()[b+1]; planar: same edges on both axes.
  const std::vector<double>& edges() const { return edges_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  // Points that fell outside every bin.
  std::uint64_t overflow() const { return overflow_; }

  void record(std::span<const cplx> points, long sweep_index);
  double area(std::size_t bin) const;
  double intensity(std::size_t bin) const;
  double standard_error(std::size_t bin) const;
  // Pools counts and batches of an independent chain with the same binning.
  void merge(const IntensityHistogram& other);
  // Same counts on edges divided by rn, so intensity() returns r_n^2 times the
  // original values.
  IntensityHistogram rescaled(double rn) const;

 private:
  struct Batch {
    long sweeps = 0;
    std::vector<std::uint64_t> counts;
  };
  long bin_of(cplx z) const;

  HistogramKind kind_ = HistogramKind::kRadial;
  int bins_ = 0;
  long n_ = 0;
  long planned_ = 0;
  std::vector<double> edges_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t overflow_ = 0;
  std::vector<Batch> batches_;
};

IntensityHistogram rescaled_histogram(const IntensityHistogram& h, double rn);

struct EnsembleConfig {
  long n = 1;
  potentials::MacroscopicPotential potential = potentials::MacroscopicPotential::radial({0.0, 1.0}, 0.0);
  double step = 0.2;
  long sweeps = 10000;
  long burn_in = 1000;
  std::uint64_t seed = 1;
  HistogramSpec histogram;
  bool tune_step = true;
  // Keep all moduli every `moduli_every` recorded sweeps (0: none).
  long moduli_every = 0;

  void validate() const;
};

struct McmcResult {
  IntensityHistogram histogram;
  double acceptance_rate = 0.0;
  double step = 0.0;  // proposal scale after tuning
  std::vector<double> moduli;
  std::vector<std::string> warnings;
};

inline constexpr double kTargetAcceptance = 0.35;

McmcResult run_mcmc(const EnsembleConfig& cfg);

// Independent chains seeded from cfg.seed, run on up to `threads` threads and
// merged. The result does not depend on the thread count.
McmcResult run_chains(const EnsembleConfig& cfg, int chains, int threads);

// draws x n moduli (row-major); row d holds one r_j per j = 0..n-1, each from
// the density proportional to r^{2j+2c+1} e^{-n Q(r)}.
std::vector<double> sample_radial_exact(const potentials::MacroscopicPotential& q, long n,
                                        std::uint64_t seed, long draws);

}  // namespace focklab::mc
