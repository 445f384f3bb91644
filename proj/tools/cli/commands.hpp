#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace focklab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitFit = 4,
};

struct Options {
  std::optional<int> k;
  std::optional<double> c;
  std::optional<double> amplitude;
  std::string coeffs_file;
  // Contents of coeffs_file; run_command fills it when empty.
  std::string coeffs_json;
  std::string grid;    // "min:max:points[:lin|log]"
  std::optional<long> n;
  std::string n_list;  // "16,64,256"
  std::optional<std::uint64_t> seed;
  std::string out;

  // sample
  long sweeps = 20000;
  long burn_in = 2000;
  int bins = 40;
  std::optional<double> extent;
  double step = 0.2;
  int chains = 1;
  int threads = 1;
  bool planar = false;
  // gram / hermitian r0
  int angles = 8;
  int quadrature = 512;
  // fig1
  bool log_y = false;
};

// Runs one subcommand. Data goes to opts.out when set (with a JSON sidecar
// next to CSV files), otherwise to `out`; diagnostics go to `err`.
int run_command(const std::string& name, const Options& opts, std::ostream& out, std::ostream& err);

// Path of the JSON sidecar written next to a CSV or SVG output.
std::string sidecar_path(const std::string& path);

}  // namespace focklab::cli
