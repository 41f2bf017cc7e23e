#ifndef LEVYSPEC_LEVYSPEC_H
#define LEVYSPEC_LEVYSPEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(LEVYSPEC_BUILDING_LIBRARY)
#define LVS_API __attribute__((visibility("default")))
#else
#define LVS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status. On failure, lvs_last_error() holds a
 * one-line message for the calling thread until its next failing call. */
typedef enum lvs_status {
  LVS_OK = 0,
  LVS_ERR_INTERNAL = 1,
  LVS_ERR_PRECONDITION = 2,
  LVS_ERR_NUMERIC = 3
} lvs_status;

LVS_API const char* lvs_last_error(void);
LVS_API const char* lvs_version(void);

/* ---- weight laws ---- */

typedef struct lvs_law lvs_law;

/* Built-in inverse-power law U = V^{-1/alpha} with sign parameter theta. */
LVS_API lvs_status lvs_law_create(double alpha, double theta, lvs_law** out);
/* Finite-variance weights, uniform on [lo, hi]. Only the sampling calls and
 * lvs_law_mean accept this kind. */
LVS_API lvs_status lvs_law_create_uniform(double lo, double hi, lvs_law** out);
LVS_API void lvs_law_free(lvs_law* law);

LVS_API lvs_status lvs_law_tail(const lvs_law* law, double t, double* out);
LVS_API lvs_status lvs_law_quantile(const lvs_law* law, double u, double* out);
LVS_API lvs_status lvs_law_a_n(const lvs_law* law, uint64_t n, double* out);
LVS_API lvs_status lvs_law_w_n(const lvs_law* law, uint64_t n, double* out);
LVS_API lvs_status lvs_law_kappa_n(const lvs_law* law, uint64_t n, double* out);
LVS_API lvs_status lvs_law_truncated_moment(const lvs_law* law, double p, double t, double* out);
LVS_API lvs_status lvs_law_mean(const lvs_law* law, double* out);

/* ---- matrix spectra ---- */

typedef enum lvs_scaling {
  LVS_SCALE_IID = 0,          /* a_n^{-1} X, X signed i.i.d. */
  LVS_SCALE_MARKOV_KAPPA = 1, /* kappa_n S, mean-normalized; alpha in [1,2) */
  LVS_SCALE_MARKOV_SQRTN = 2, /* sqrt(n) S */
  LVS_SCALE_MARKOV = 3        /* S, same spectrum as K */
} lvs_scaling;

typedef struct lvs_spectrum lvs_spectrum;
typedef struct lvs_histogram lvs_histogram;

/* Draws replication `rep` of the model under `seed` and diagonalizes it. */
LVS_API lvs_status lvs_spectrum_sample(const lvs_law* law, int64_t n, lvs_scaling scaling, uint64_t seed,
                                       uint64_t rep, lvs_spectrum** out);
/* Symmetric matrix, row-major n*n. */
LVS_API lvs_status lvs_spectrum_from_matrix(const double* a, int64_t n, lvs_spectrum** out);
LVS_API void lvs_spectrum_free(lvs_spectrum* s);

LVS_API int64_t lvs_spectrum_size(const lvs_spectrum* s);
/* Ascending eigenvalues; cap must be >= size. */
LVS_API lvs_status lvs_spectrum_eigenvalues(const lvs_spectrum* s, double* out, int64_t cap);
LVS_API lvs_status lvs_spectrum_moment(const lvs_spectrum* s, int ell, double* out);
LVS_API lvs_status lvs_spectrum_stieltjes(const lvs_spectrum* s, double re_z, double im_z, double* out_re,
                                          double* out_im);
/* 1 - lambda_2; meaningful for the unscaled kernel. */
LVS_API lvs_status lvs_spectrum_gap(const lvs_spectrum* s, double* out);
/* bins <= 0 selects ceil(sqrt(n)); trim keeps the index window
 * [floor(log n), floor(n - log n)] of the ascending spectrum. */
LVS_API lvs_status lvs_spectrum_histogram(const lvs_spectrum* s, int64_t bins, int trim, lvs_histogram** out);

/* Zero-based half-open window [begin, end) of the ascending spectrum kept by
 * trimming: one-based indices floor(log n) .. floor(n - log n). */
LVS_API lvs_status lvs_trim_window(int64_t n, int64_t* begin, int64_t* end);

/* Uniform bins over [min, max] of `values`, densities normalized by `total`. */
LVS_API lvs_status lvs_histogram_from_values(const double* values, int64_t count, int64_t total, int64_t bins,
                                             lvs_histogram** out);
LVS_API void lvs_histogram_free(lvs_histogram* h);
LVS_API int64_t lvs_histogram_bins(const lvs_histogram* h);
LVS_API lvs_status lvs_histogram_bin(const lvs_histogram* h, int64_t i, double* left, double* right,
                                     int64_t* count, double* density);
LVS_API lvs_status lvs_histogram_mass(const lvs_histogram* h, int64_t* kept, int64_t* total);

/* ---- PWIT ---- */

typedef struct lvs_pwit_config {
  double alpha;
  double theta;
  int B;
  int H;
  int max_depth;        /* -1: whole depth */
  double prune_tol;     /* 0: no pruning */
  int64_t max_vertices;
} lvs_pwit_config;

typedef enum lvs_operator_kind { LVS_OP_T = 0, LVS_OP_K = 1, LVS_OP_S = 2 } lvs_operator_kind;

typedef struct lvs_tree lvs_tree;
typedef struct lvs_operator lvs_operator;

LVS_API lvs_pwit_config lvs_pwit_config_default(void);
LVS_API lvs_status lvs_tree_sample(const lvs_pwit_config* config, uint64_t seed, uint64_t rep, lvs_tree** out);
LVS_API void lvs_tree_free(lvs_tree* t);
LVS_API int64_t lvs_tree_size(const lvs_tree* t);
/* 1 if every vertex of the (B,H) truncation is held. */
LVS_API int lvs_tree_complete(const lvs_tree* t);
/* (B^{H+1}-1)/(B-1), saturating. */
LVS_API int64_t lvs_full_vertex_count(int B, int H);
/* Depth of the ball that reproduces p_ell exactly for ell <= max_ell. */
LVS_API int lvs_moment_depth(int max_ell);

LVS_API lvs_status lvs_operator_build(const lvs_tree* t, lvs_operator_kind kind, double alpha,
                                      lvs_operator** out);
LVS_API void lvs_operator_free(lvs_operator* op);
LVS_API int64_t lvs_operator_size(const lvs_operator* op);
/* <root, (A - z)^{-1} root>; residual may be NULL. */
LVS_API lvs_status lvs_operator_resolvent(const lvs_operator* op, double re_z, double im_z, double* out_re,
                                          double* out_im, double* residual);
/* out receives max_ell + 1 values p_0..p_max_ell. */
LVS_API lvs_status lvs_operator_moments(const lvs_operator* op, int max_ell, double* out);
LVS_API lvs_status lvs_discarded_l2_mass(double alpha, int B, double* out);

/* Leading k coordinates of PD(alpha, 0). */
LVS_API lvs_status lvs_pd_sample(double alpha, int k, int64_t tail_terms, uint64_t seed, uint64_t rep,
                                 double* out);

/* ---- recursive distributional equation ---- */

typedef struct lvs_rde lvs_rde;

LVS_API lvs_status lvs_rde_solve(double alpha, const double* t_grid, int64_t count, double fixed_point_tol,
                                 double quadrature_tol, int jobs, lvs_rde** out);
LVS_API void lvs_rde_free(lvs_rde* sol);
LVS_API int64_t lvs_rde_size(const lvs_rde* sol);
LVS_API lvs_status lvs_rde_row(const lvs_rde* sol, int64_t i, double* t, double* q, double* eg,
                               double* residual);

LVS_API lvs_status lvs_rde_phi(double y, double t, double beta, double* out);
LVS_API lvs_status lvs_rde_solve_q(double t, double beta, double tol, double* q, double* residual);
LVS_API lvs_status lvs_rde_expected_g(double t, double beta, double q, double* out);
LVS_API lvs_status lvs_rde_density_at_zero(double alpha, double* from_fixed_point, double* displayed_formula);
LVS_API lvs_status lvs_rde_tail_constant(double alpha, double* quadrature, double* closed_form);
LVS_API lvs_status lvs_rde_tauberian_ratio(double alpha, double t, double* out);
LVS_API lvs_status lvs_rde_gamma2(double alpha, double* value, double* error);
LVS_API lvs_status lvs_stable_laplace(double beta, double t, double* derived, double* displayed);

/* ---- invariant measure ---- */

typedef struct lvs_invariant lvs_invariant;

/* Ranked invariant vector of replication `rep`, top k scaled coordinates. */
LVS_API lvs_status lvs_invariant_sample(const lvs_law* law, int64_t n, int64_t k, uint64_t seed, uint64_t rep,
                                        lvs_invariant** out);
LVS_API void lvs_invariant_free(lvs_invariant* inv);
LVS_API int64_t lvs_invariant_size(const lvs_invariant* inv);
LVS_API int64_t lvs_invariant_top_count(const lvs_invariant* inv);
/* cap must be >= size. */
LVS_API lvs_status lvs_invariant_rho_tilde(const lvs_invariant* inv, double* out, int64_t cap);
/* cap must be >= top count. */
LVS_API lvs_status lvs_invariant_scaled(const lvs_invariant* inv, double* out, int64_t cap);
LVS_API lvs_status lvs_invariant_scale(const lvs_invariant* inv, double* scale, double* b_n);
LVS_API lvs_status lvs_invariant_pairing_ratio(const lvs_invariant* inv, int64_t j, double* out);

/* First k ranked points of the Poisson process with intensity alpha x^{-alpha-1}. */
LVS_API lvs_status lvs_ppp_top(double alpha, int64_t k, uint64_t seed, uint64_t rep, double* out);

/* ---- statistics ---- */

LVS_API lvs_status lvs_ks_two_sample(const double* a, int64_t na, const double* b, int64_t nb, double* out);
/* Against the Frechet CDF exp(-x^{-alpha}). */
LVS_API lvs_status lvs_ks_frechet(const double* samples, int64_t count, double alpha, double* out);

#ifdef __cplusplus
}
#endif

#endif
