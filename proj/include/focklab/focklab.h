#ifndef FOCKLAB_FOCKLAB_H
#define FOCKLAB_FOCKLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FL_API __declspec(dllexport)
#else
#define FL_API __attribute__((visibility("default")))
#endif

typedef enum fl_status {
  FL_OK = 0,
  FL_ERR_INVALID = 1,      /* bad argument or configuration */
  FL_ERR_DIVERGENCE = 2,   /* value is infinite (e.g. R_0(0) with c < 0) */
  FL_ERR_OVERFLOW = 3,
  FL_ERR_NOT_PD = 4,       /* moment matrix not usable */
  FL_ERR_CONVERGENCE = 5,  /* quadrature or iteration failed */
  FL_ERR_FIT = 6,
  FL_ERR_INTERNAL = 7
} fl_status;

/* Message of the last failed call on this thread; never NULL. */
FL_API const char* fl_last_error(void);
FL_API const char* fl_version(void);
/* Frees strings returned through char** out-parameters. */
FL_API void fl_string_free(char* s);

/* special functions */
FL_API fl_status fl_log_gamma(double x, double* out);
FL_API fl_status fl_mittag_leffler(double a, double b, double x, double* out);

/* potentials */
typedef struct fl_potential fl_potential;
typedef struct fl_micro fl_micro;

FL_API fl_status fl_potential_from_json(const char* json, fl_potential** out);
/* Q(r) = sum_m q[m] r^{2m}, q[0] = 0. */
FL_API fl_status fl_potential_radial(const double* q, size_t len, double c, fl_potential** out);
FL_API void fl_potential_free(fl_potential* p);
FL_API fl_status fl_potential_to_json(const fl_potential* p, char** out);
FL_API fl_status fl_potential_info(const fl_potential* p, int* k, double* c, int* is_radial);
/* lambda with Delta^k (lambda Q)_0(0) / (k [(k-1)!]^2) = 1 + c */
FL_API fl_status fl_potential_normalization(const fl_potential* p, double* lambda);
FL_API fl_status fl_potential_micro(const fl_potential* p, fl_micro** out);

/* V_0 = Q_0 - 2c log|z|, Q_0 homogeneous (holomorphic part kept) */
FL_API fl_status fl_micro_from_json(const char* json, fl_micro** out);
FL_API void fl_micro_free(fl_micro* m);
FL_API fl_status fl_micro_info(const fl_micro* m, int* k, double* c, double* kappa_re,
                               double* kappa_im);
FL_API fl_status fl_micro_tau0(const fl_micro* m, double* out);
/* Delta Q_0 at x + iy */
FL_API fl_status fl_micro_laplacian(const fl_micro* m, double x, double y, double* out);
/* is_radial = 1 and amplitude a when Q_0 = a|z|^{2k} */
FL_API fl_status fl_micro_radial(const fl_micro* m, int* is_radial, double* amplitude);

/* radial Bergman function of V_0 = a|z|^{2k} - 2c log|z| */
FL_API fl_status fl_r0(int k, double c, double a, double r, double* out);
FL_API fl_status fl_r0_truncated(int k, double c, double a, double r, long terms, double* out);
FL_API fl_status fl_laplacian_q0(int k, double a, double r, double* out);
/* JSON decay report over the grid r[0..len) */
FL_API fl_status fl_decay_report_json(int k, double c, double a, const double* r, size_t len,
                                      char** out);
/* Same report for precomputed values R_0(r[i]) = r0[i] */
FL_API fl_status fl_decay_fit_json(int k, double c, double a, const double* r, const double* r0,
                                   size_t len, char** out);

/* general Q_0: moment matrix and truncated kernel */
typedef struct fl_gram fl_gram;
typedef struct fl_kernel fl_kernel;

FL_API fl_status fl_gram_create(const fl_micro* m, int n, int quadrature_points, fl_gram** out);
FL_API void fl_gram_free(fl_gram* g);
FL_API int fl_gram_size(const fl_gram* g);
FL_API fl_status fl_gram_entry(const fl_gram* g, int i, int j, double* re, double* im);
FL_API double fl_gram_discrepancy(const fl_gram* g);

/* order < 0 uses the whole matrix */
FL_API fl_status fl_kernel_create(const fl_gram* g, int order, fl_kernel** out);
FL_API void fl_kernel_free(fl_kernel* k);
FL_API fl_status fl_kernel_density(const fl_kernel* k, const fl_micro* m, double x, double y,
                                   double* out);
FL_API fl_status fl_kernel_value(const fl_kernel* k, double zx, double zy, double wx, double wy,
                                 double* re, double* im);
FL_API double fl_kernel_condition(const fl_kernel* k);
FL_API double fl_kernel_accuracy(const fl_kernel* k);

/* equilibrium (radial Q) */
FL_API fl_status fl_droplet_radius(const fl_potential* p, double* out);
FL_API fl_status fl_microscale(const fl_potential* p, long n, double* out);
FL_API fl_status fl_microscale_check_json(const fl_potential* p, const long* n, size_t len,
                                          char** out);

/* exact finite-n kernel (radial Q, no spectators) */
typedef struct fl_finite fl_finite;

FL_API fl_status fl_finite_create(const fl_potential* p, long n, fl_finite** out);
FL_API void fl_finite_free(fl_finite* f);
FL_API fl_status fl_finite_intensity(const fl_finite* f, double r, double* out);
FL_API fl_status fl_finite_rescaled(const fl_finite* f, double z, double rn, double* out);
FL_API fl_status fl_finite_mass(const fl_finite* f, double* out);
FL_API fl_status fl_finite_annulus_average(const fl_finite* f, double r_lo, double r_hi,
                                           double* out);
/* JSON: normalization, r_n, R_0 and R_n on the z grid, sup errors */
FL_API fl_status fl_convergence_report_json(const fl_potential* p, const long* n_list,
                                            size_t n_len, const double* z, size_t z_len,
                                            char** out);

/* Coulomb gas Monte Carlo */
typedef struct fl_histogram fl_histogram;
typedef struct fl_mc_result fl_mc_result;

typedef struct fl_mc_config {
  long n;
  double step;
  long sweeps;
  long burn_in;
  uint64_t seed;
  int planar;      /* 0: radial bins on [0, extent]; 1: square [-extent, extent]^2 */
  int bins;
  double extent;
  int tune_step;
  long moduli_every;
  int chains;
  int threads;
} fl_mc_config;

FL_API void fl_mc_config_default(fl_mc_config* cfg);
/* xy holds npts interleaved (x, y) pairs */
FL_API fl_status fl_energy(const fl_potential* p, const double* xy, size_t npts, double* out);
FL_API fl_status fl_mc_run(const fl_potential* p, const fl_mc_config* cfg, fl_mc_result** out);
FL_API void fl_mc_result_free(fl_mc_result* r);
FL_API double fl_mc_acceptance(const fl_mc_result* r);
FL_API double fl_mc_step(const fl_mc_result* r);
/* borrowed; valid while r lives */
FL_API const fl_histogram* fl_mc_histogram(const fl_mc_result* r);
FL_API const double* fl_mc_moduli(const fl_mc_result* r, size_t* len);
FL_API size_t fl_mc_warning_count(const fl_mc_result* r);
FL_API const char* fl_mc_warning(const fl_mc_result* r, size_t i);

FL_API int fl_histogram_planar(const fl_histogram* h);
FL_API size_t fl_histogram_bin_count(const fl_histogram* h);
FL_API const double* fl_histogram_edges(const fl_histogram* h, size_t* len);
FL_API long fl_histogram_sweeps(const fl_histogram* h);
FL_API fl_status fl_histogram_bin(const fl_histogram* h, size_t bin, uint64_t* count,
                                  double* area, double* intensity, double* std_error);
FL_API fl_status fl_histogram_rescaled(const fl_histogram* h, double rn, fl_histogram** out);
FL_API void fl_histogram_free(fl_histogram* h);

/* out must hold n * draws values */
FL_API fl_status fl_sample_radial_exact(const fl_potential* p, long n, uint64_t seed, long draws,
                                        double* out);
FL_API fl_status fl_ks_two_sample(const double* a, size_t na, const double* b, size_t nb,
                                  double* statistic, double* p_value);

#ifdef __cplusplus
}
#endif

#endif
