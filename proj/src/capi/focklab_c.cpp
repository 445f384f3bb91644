#include "focklab/focklab.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <string>

#include "focklab/config.hpp"
#include "focklab/coulomb_mc.hpp"
#include "focklab/equilibrium.hpp"
#include "focklab/errors.hpp"
#include "focklab/finite_kernel.hpp"
#include "focklab/general_bergman.hpp"
#include "focklab/radial_bergman.hpp"
#include "focklab/special_fn.hpp"
#include "focklab/stats.hpp"

using nlohmann::json;
namespace fl = focklab;

struct fl_potential {
  fl::potentials::MacroscopicPotential q;
};
struct fl_micro {
  fl::potentials::MicroscopicPotential p;
};
struct fl_gram {
  fl::general::MomentMatrix a;
};
struct fl_kernel {
  fl::general::TruncatedKernel k;
};
struct fl_finite {
  fl::finite::FiniteKernel f;
};
struct fl_histogram {
  fl::mc::IntensityHistogram h;
};
struct fl_mc_result {
  fl::mc::McmcResult r;
  fl_histogram hist;
};

namespace {

thread_local std::string g_last_error;

template <class F>
fl_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return FL_OK;
  } catch (const fl::DomainError& e) {
    g_last_error = e.what();
    return FL_ERR_INVALID;
  } catch (const fl::DivergenceError& e) {
    g_last_error = e.what();
    return FL_ERR_DIVERGENCE;
  } catch (const fl::OverflowError& e) {
    g_last_error = e.what();
    return FL_ERR_OVERFLOW;
  } catch (const fl::NotPositiveDefiniteError& e) {
    g_last_error = e.what();
    return FL_ERR_NOT_PD;
  } catch (const fl::ConvergenceError& e) {
    g_last_error = e.what();
    return FL_ERR_CONVERGENCE;
  } catch (const fl::FitError& e) {
    g_last_error = e.what();
    return FL_ERR_FIT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FL_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw fl::DomainError(std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Non-finite numbers become null in JSON.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json decay_json(const fl::radial::DecayReport& rep) {
  json pts = json::array();
  for (const auto& p : rep.points) {
    pts.push_back({{"r", num(p.r)}, {"u", num(p.u)}, {"R0", num(p.r0)},
                   {"deltaQ0", num(p.delta_q0)}, {"rel_err", num(p.rel_err)}, {"used", p.used}});
  }
  return {{"k", rep.k},
          {"c", rep.c},
          {"amplitude", rep.amplitude},
          {"identically_zero", rep.identically_zero},
          {"used_points", rep.used_points},
          {"sign_consistent", rep.sign_consistent},
          {"slope", num(rep.slope)},
          {"alpha", num(rep.alpha)},
          {"prefactor_exponent", num(rep.prefactor_exponent)},
          {"naive_slope", num(rep.naive_slope)},
          {"slope_in_band", rep.identically_zero ? false : rep.slope_in_band()},
          {"points", pts}};
}

std::vector<double> vec(const double* p, size_t len) {
  if (len > 0) need(p, "array");
  return std::vector<double>(p, p + len);
}

}  // namespace

extern "C" {

const char* fl_last_error(void) { return g_last_error.c_str(); }
const char* fl_version(void) { return "1.0.0"; }
void fl_string_free(char* s) { std::free(s); }

fl_status fl_log_gamma(double x, double* out) {
  return guard([&] {
    need(out, "out");
    *out = fl::special_fn::log_gamma(x);
  });
}

fl_status fl_mittag_leffler(double a, double b, double x, double* out) {
  return guard([&] {
    need(out, "out");
    *out = fl::special_fn::mittag_leffler(fl::special_fn::MLParams(a, b), x,
                                          fl::special_fn::Summation::kCompensated);
  });
}

fl_status fl_potential_from_json(const char* text, fl_potential** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    *out = new fl_potential{fl::config::parse_potential(text)};
  });
}

fl_status fl_potential_radial(const double* q, size_t len, double c, fl_potential** out) {
  return guard([&] {
    need(out, "out");
    *out = new fl_potential{fl::potentials::MacroscopicPotential::radial(vec(q, len), c)};
  });
}

void fl_potential_free(fl_potential* p) { delete p; }

fl_status fl_potential_to_json(const fl_potential* p, char** out) {
  return guard([&] {
    need(p, "potential");
    need(out, "out");
    *out = dup(fl::config::to_json(p->q));
  });
}

fl_status fl_potential_info(const fl_potential* p, int* k, double* c, int* is_radial) {
  return guard([&] {
    need(p, "potential");
    if (k) *k = fl::potentials::detect_k(p->q);
    if (c) *c = p->q.c();
    if (is_radial) *is_radial = p->q.is_radial() ? 1 : 0;
  });
}

fl_status fl_potential_normalization(const fl_potential* p, double* lambda) {
  return guard([&] {
    need(p, "potential");
    need(lambda, "out");
    *lambda = fl::potentials::normalization_factor(fl::potentials::microscopic_potential(p->q));
  });
}

fl_status fl_potential_micro(const fl_potential* p, fl_micro** out) {
  return guard([&] {
    need(p, "potential");
    need(out, "out");
    *out = new fl_micro{fl::potentials::microscopic_potential(p->q)};
  });
}

fl_status fl_micro_from_json(const char* text, fl_micro** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    *out = new fl_micro{fl::config::parse_microscopic(text)};
  });
}

void fl_micro_free(fl_micro* m) { delete m; }

fl_status fl_micro_info(const fl_micro* m, int* k, double* c, double* kappa_re, double* kappa_im) {
  return guard([&] {
    need(m, "micro");
    if (k) *k = m->p.k();
    if (c) *c = m->p.c();
    if (kappa_re) *kappa_re = m->p.kappa().real();
    if (kappa_im) *kappa_im = m->p.kappa().imag();
  });
}

fl_status fl_micro_tau0(const fl_micro* m, double* out) {
  return guard([&] {
    need(m, "micro");
    need(out, "out");
    *out = fl::equilibrium::modulus_tau0(m->p.q0());
  });
}

fl_status fl_micro_laplacian(const fl_micro* m, double x, double y, double* out) {
  return guard([&] {
    need(m, "micro");
    need(out, "out");
    *out = m->p.laplacian_q0(fl::cplx(x, y));
  });
}

fl_status fl_micro_radial(const fl_micro* m, int* is_radial, double* amplitude) {
  return guard([&] {
    need(m, "micro");
    double a = 0.0;
    const bool r = m->p.is_radial(&a);
    if (is_radial) *is_radial = r ? 1 : 0;
    if (amplitude) *amplitude = r ? a : 0.0;
  });
}

fl_status fl_r0(int k, double c, double a, double r, double* out) {
  return guard([&] {
    need(out, "out");
    *out = fl::radial::bergman_function_r0(k, c, a, r);
  });
}

fl_status fl_r0_truncated(int k, double c, double a, double r, long terms, double* out) {
  return guard([&] {
    need(out, "out");
    *out = fl::radial::truncated_r0(k, c, a, r, terms);
  });
}

fl_status fl_laplacian_q0(int k, double a, double r, double* out) {
  return guard([&] {
    need(out, "out");
    *out = fl::radial::laplacian_q0(k, a, r);
  });
}

fl_status fl_decay_report_json(int k, double c, double a, const double* r, size_t len, char** out) {
  return guard([&] {
    need(out, "out");
    const auto grid = vec(r, len);
    *out = dup(decay_json(fl::radial::thm1_decay_report(k, c, a, grid)).dump());
  });
}

fl_status fl_decay_fit_json(int k, double c, double a, const double* r, const double* r0,
                            size_t len, char** out) {
  return guard([&] {
    need(out, "out");
    const auto grid = vec(r, len);
    const auto vals = vec(r0, len);
    *out = dup(decay_json(fl::radial::fit_decay(k, c, a, grid, vals)).dump());
  });
}

fl_status fl_gram_create(const fl_micro* m, int n, int quadrature_points, fl_gram** out) {
  return guard([&] {
    need(m, "micro");
    need(out, "out");
    *out = new fl_gram{fl::general::MomentMatrix(m->p, n, quadrature_points)};
  });
}

void fl_gram_free(fl_gram* g) { delete g; }
int fl_gram_size(const fl_gram* g) { return g ? g->a.size() : 0; }

fl_status fl_gram_entry(const fl_gram* g, int i, int j, double* re, double* im) {
  return guard([&] {
    need(g, "gram");
    const auto v = g->a.entry(i, j);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

double fl_gram_discrepancy(const fl_gram* g) { return g ? g->a.doubling_discrepancy() : -1.0; }

fl_status fl_kernel_create(const fl_gram* g, int order, fl_kernel** out) {
  return guard([&] {
    need(g, "gram");
    need(out, "out");
    *out = new fl_kernel{fl::general::TruncatedKernel(g->a, order)};
  });
}

void fl_kernel_free(fl_kernel* k) { delete k; }

fl_status fl_kernel_density(const fl_kernel* k, const fl_micro* m, double x, double y,
                            double* out) {
  return guard([&] {
    need(k, "kernel");
    need(m, "micro");
    need(out, "out");
    *out = k->k.density(m->p, fl::cplx(x, y));
  });
}

fl_status fl_kernel_value(const fl_kernel* k, double zx, double zy, double wx, double wy,
                          double* re, double* im) {
  return guard([&] {
    need(k, "kernel");
    const auto v = k->k.kernel(fl::cplx(zx, zy), fl::cplx(wx, wy));
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

double fl_kernel_condition(const fl_kernel* k) { return k ? k->k.condition_number() : 0.0; }
double fl_kernel_accuracy(const fl_kernel* k) { return k ? k->k.accuracy_estimate() : 0.0; }

fl_status fl_droplet_radius(const fl_potential* p, double* out) {
  return guard([&] {
    need(p, "potential");
    need(out, "out");
    *out = fl::equilibrium::droplet_radius(p->q);
  });
}

fl_status fl_microscale(const fl_potential* p, long n, double* out) {
  return guard([&] {
    need(p, "potential");
    need(out, "out");
    *out = fl::equilibrium::microscopic_scale(p->q, n);
  });
}

fl_status fl_microscale_check_json(const fl_potential* p, const long* n, size_t len, char** out) {
  return guard([&] {
    need(p, "potential");
    need(out, "out");
    if (len > 0) need(n, "n");
    const std::vector<long> ns(n, n + len);
    const auto chk = fl::equilibrium::microscale_asymptotic_check(p->q, ns);
    json rows = json::array();
    for (size_t i = 0; i < chk.n.size(); ++i) {
      rows.push_back({{"n", chk.n[i]}, {"r_n", num(chk.r_n[i])}, {"error", num(chk.error[i])},
                      {"scaled_error", num(chk.scaled_error[i])}});
    }
    json j = {{"k", chk.k},
              {"c", chk.c},
              {"tau0", num(chk.tau0)},
              {"fitted_constant", num(chk.fitted_constant)},
              {"empirical_rate", num(chk.empirical_rate)},
              {"identically_zero", chk.identically_zero},
              {"bounded", chk.bounded},
              {"rows", rows}};
    *out = dup(j.dump());
  });
}

fl_status fl_finite_create(const fl_potential* p, long n, fl_finite** out) {
  return guard([&] {
    need(p, "potential");
    need(out, "out");
    *out = new fl_finite{fl::finite::FiniteKernel(p->q, n)};
  });
}

void fl_finite_free(fl_finite* f) { delete f; }

fl_status fl_finite_intensity(const fl_finite* f, double r, double* out) {
  return guard([&] {
    need(f, "finite kernel");
    need(out, "out");
    *out = f->f.intensity_radial(r);
  });
}

fl_status fl_finite_rescaled(const fl_finite* f, double z, double rn, double* out) {
  return guard([&] {
    need(f, "finite kernel");
    need(out, "out");
    *out = f->f.rescaled_intensity(fl::cplx(z, 0.0), rn);
  });
}

fl_status fl_finite_mass(const fl_finite* f, double* out) {
  return guard([&] {
    need(f, "finite kernel");
    need(out, "out");
    *out = f->f.mass();
  });
}

fl_status fl_finite_annulus_average(const fl_finite* f, double r_lo, double r_hi, double* out) {
  return guard([&] {
    need(f, "finite kernel");
    need(out, "out");
    *out = f->f.annulus_average(r_lo, r_hi);
  });
}

fl_status fl_convergence_report_json(const fl_potential* p, const long* n_list, size_t n_len,
                                     const double* z, size_t z_len, char** out) {
  return guard([&] {
    need(p, "potential");
    need(out, "out");
    if (n_len > 0) need(n_list, "n_list");
    const std::vector<long> ns(n_list, n_list + n_len);
    const auto zs = vec(z, z_len);
    const auto rep = fl::finite::convergence_report(p->q, ns, zs);
    json j = {{"k", rep.k},
              {"c", rep.c},
              {"lambda", rep.lambda},
              {"amplitude", rep.amplitude},
              {"homogeneous", rep.homogeneous},
              {"n_list", rep.n_list},
              {"z", rep.z_grid},
              {"r_n", rep.r_n},
              {"R0", rep.r0},
              {"values", rep.values},
              {"sup_error", rep.sup_error},
              {"decreasing_from", rep.decreasing_from},
              {"identity_deviation", rep.identity_deviation},
              {"identity_holds", rep.identity_holds}};
    *out = dup(j.dump());
  });
}

void fl_mc_config_default(fl_mc_config* cfg) {
  if (cfg == nullptr) return;
  const fl::mc::EnsembleConfig d;
  cfg->n = d.n;
  cfg->step = d.step;
  cfg->sweeps = d.sweeps;
  cfg->burn_in = d.burn_in;
  cfg->seed = d.seed;
  cfg->planar = 0;
  cfg->bins = d.histogram.bins;
  cfg->extent = d.histogram.extent;
  cfg->tune_step = 1;
  cfg->moduli_every = 0;
  cfg->chains = 1;
  cfg->threads = 1;
}

fl_status fl_energy(const fl_potential* p, const double* xy, size_t npts, double* out) {
  return guard([&] {
    need(p, "potential");
    need(out, "out");
    if (npts > 0) need(xy, "points");
    std::vector<fl::cplx> pts(npts);
    for (size_t i = 0; i < npts; ++i) pts[i] = fl::cplx(xy[2 * i], xy[2 * i + 1]);
    *out = fl::mc::energy(pts, p->q);
  });
}

fl_status fl_mc_run(const fl_potential* p, const fl_mc_config* cfg, fl_mc_result** out) {
  return guard([&] {
    need(p, "potential");
    need(cfg, "config");
    need(out, "out");
    fl::mc::EnsembleConfig c;
    c.n = cfg->n;
    c.potential = p->q;
    c.step = cfg->step;
    c.sweeps = cfg->sweeps;
    c.burn_in = cfg->burn_in;
    c.seed = cfg->seed;
    c.histogram = {cfg->planar ? fl::mc::HistogramKind::kPlanar : fl::mc::HistogramKind::kRadial,
                   cfg->bins, cfg->extent};
    c.tune_step = cfg->tune_step != 0;
    c.moduli_every = cfg->moduli_every;
    auto res = cfg->chains > 1 ? fl::mc::run_chains(c, cfg->chains, cfg->threads)
                               : fl::mc::run_mcmc(c);
    auto* r = new fl_mc_result{std::move(res), {}};
    r->hist.h = r->r.histogram;
    *out = r;
  });
}

void fl_mc_result_free(fl_mc_result* r) { delete r; }
double fl_mc_acceptance(const fl_mc_result* r) { return r ? r->r.acceptance_rate : 0.0; }
double fl_mc_step(const fl_mc_result* r) { return r ? r->r.step : 0.0; }
const fl_histogram* fl_mc_histogram(const fl_mc_result* r) { return r ? &r->hist : nullptr; }

const double* fl_mc_moduli(const fl_mc_result* r, size_t* len) {
  if (len) *len = r ? r->r.moduli.size() : 0;
  return r && !r->r.moduli.empty() ? r->r.moduli.data() : nullptr;
}

size_t fl_mc_warning_count(const fl_mc_result* r) { return r ? r->r.warnings.size() : 0; }

const char* fl_mc_warning(const fl_mc_result* r, size_t i) {
  if (r == nullptr || i >= r->r.warnings.size()) return nullptr;
  return r->r.warnings[i].c_str();
}

int fl_histogram_planar(const fl_histogram* h) {
  return h && h->h.kind() == fl::mc::HistogramKind::kPlanar ? 1 : 0;
}

size_t fl_histogram_bin_count(const fl_histogram* h) { return h ? h->h.bin_count() : 0; }

const double* fl_histogram_edges(const fl_histogram* h, size_t* len) {
  if (len) *len = h ? h->h.edges().size() : 0;
  return h ? h->h.edges().data() : nullptr;
}

long fl_histogram_sweeps(const fl_histogram* h) { return h ? h->h.sweeps() : 0; }

fl_status fl_histogram_bin(const fl_histogram* h, size_t bin, uint64_t* count, double* area,
                           double* intensity, double* std_error) {
  return guard([&] {
    need(h, "histogram");
    if (bin >= h->h.bin_count()) throw fl::DomainError("bin index out of range");
    if (count) *count = h->h.counts()[bin];
    if (area) *area = h->h.area(bin);
    if (intensity) *intensity = h->h.intensity(bin);
    if (std_error) *std_error = h->h.standard_error(bin);
  });
}

fl_status fl_histogram_rescaled(const fl_histogram* h, double rn, fl_histogram** out) {
  return guard([&] {
    need(h, "histogram");
    need(out, "out");
    *out = new fl_histogram{fl::mc::rescaled_histogram(h->h, rn)};
  });
}

void fl_histogram_free(fl_histogram* h) { delete h; }

fl_status fl_sample_radial_exact(const fl_potential* p, long n, uint64_t seed, long draws,
                                 double* out) {
  return guard([&] {
    need(p, "potential");
    need(out, "out");
    const auto s = fl::mc::sample_radial_exact(p->q, n, seed, draws);
    std::copy(s.begin(), s.end(), out);
  });
}

fl_status fl_ks_two_sample(const double* a, size_t na, const double* b, size_t nb,
                           double* statistic, double* p_value) {
  return guard([&] {
    const auto res = fl::stats::ks_two_sample(vec(a, na), vec(b, nb));
    if (statistic) *statistic = res.statistic;
    if (p_value) *p_value = res.p_value;
  });
}

}  // extern "C"
