#include <CLI11.hpp>
#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using focklab::cli::Options;
  CLI::App app{"Bergman functions of Fock-Sobolev spaces"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--k", o.k, "degree k of Q_0 = a|z|^{2k}");
    s->add_option("--c", o.c, "charge c > -1 at the origin");
    s->add_option("--amplitude", o.amplitude, "a in Q_0 = a|z|^{2k}");
    s->add_option("--coeffs-file", o.coeffs_file, "JSON potential description");
    s->add_option("--grid", o.grid, "min:max:points[:lin|log]");
    s->add_option("--n", o.n, "number of particles / truncation order");
    s->add_option("--n-list", o.n_list, "comma separated n values");
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--out", o.out, "output path");
  };
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"r0", "tabulate R_0(r)"},
      {"verify-thm1", "fit the exponential decay of R_0 / Delta Q_0 - 1"},
      {"rescale", "rescaled finite-n kernels against R_0"},
      {"equilibrium", "droplet radius, tau_0 and microscopic scales"},
      {"sample", "Metropolis sampling of the Coulomb gas"},
      {"fig1", "three Bergman functions as an SVG"},
      {"gram", "truncated kernel of a general Q_0"},
  };
  for (const auto& s : subs) {
    auto* sc = app.add_subcommand(s.name, s.help);
    common(sc);
    const std::string nm = s.name;
    if (nm == "sample") {
      sc->add_option("--sweeps", o.sweeps, "recorded sweeps");
      sc->add_option("--burn-in", o.burn_in, "burn-in sweeps");
      sc->add_option("--bins", o.bins, "histogram bins (per axis if planar)");
      sc->add_option("--extent", o.extent, "histogram radius or half-width");
      sc->add_option("--step", o.step, "initial proposal scale");
      sc->add_option("--chains", o.chains, "independent chains");
      sc->add_option("--threads", o.threads, "worker threads");
      sc->add_flag("--planar", o.planar, "2-D histogram instead of radial bins");
    }
    if (nm == "gram" || nm == "r0") {
      sc->add_option("--angles", o.angles, "angles per radius for non-radial Q_0");
      sc->add_option("--quadrature", o.quadrature, "angular quadrature points");
    }
    if (nm == "fig1") sc->add_flag("--log-y", o.log_y, "logarithmic y axis");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : focklab::cli::kExitConfig;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  return focklab::cli::run_command(name, o, std::cout, std::cerr);
}
