#include "levyspec/levyspec.h"

#include <cmath>
#include <new>
#include <string>
#include <variant>

#include "core/errors.hpp"
#include "core/experiments.hpp"
#include "core/invariant.hpp"
#include "core/pwit.hpp"
#include "core/rde.hpp"
#include "core/spectra.hpp"
#include "core/stats.hpp"

using namespace levyspec;

struct lvs_law {
  std::variant<TailLaw, UniformLaw> law;
};
struct lvs_spectrum {
  SpectralSample sample;
};
struct lvs_histogram {
  Histogram hist;
};
struct lvs_tree {
  PwitTruncation tree;
};
struct lvs_operator {
  RootOperator op;
};
struct lvs_rde {
  RdeSolution sol;
};
struct lvs_invariant {
  RankedInvariant ranked;
};

namespace {

thread_local std::string g_last_error;

lvs_status fail(lvs_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <class Fn>
lvs_status guard(Fn&& fn) {
  try {
    fn();
    return LVS_OK;
  } catch (const PreconditionError& e) {
    return fail(LVS_ERR_PRECONDITION, e.what());
  } catch (const NumericError& e) {
    return fail(LVS_ERR_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LVS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LVS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LVS_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) throw PreconditionError(std::string(name) + " must not be null");
}

const TailLaw& tail_law(const lvs_law* law) {
  need(law, "law");
  const auto* t = std::get_if<TailLaw>(&law->law);
  if (t == nullptr) throw PreconditionError("operation needs a heavy-tailed law");
  return *t;
}

ScalingMode to_mode(lvs_scaling s) {
  switch (s) {
    case LVS_SCALE_IID: return ScalingMode::kIidAn;
    case LVS_SCALE_MARKOV_KAPPA: return ScalingMode::kMarkovKappa;
    case LVS_SCALE_MARKOV_SQRTN: return ScalingMode::kMarkovSqrtN;
    case LVS_SCALE_MARKOV: return ScalingMode::kMarkovUnscaled;
  }
  throw PreconditionError("unknown scaling");
}

OperatorKind to_kind(lvs_operator_kind k) {
  switch (k) {
    case LVS_OP_T: return OperatorKind::kT;
    case LVS_OP_K: return OperatorKind::kK;
    case LVS_OP_S: return OperatorKind::kS;
  }
  throw PreconditionError("unknown operator kind");
}

}  // namespace

extern "C" {

const char* lvs_last_error(void) { return g_last_error.c_str(); }

const char* lvs_version(void) { return "0.1.0"; }

lvs_status lvs_law_create(double alpha, double theta, lvs_law** out) {
  return guard([&] {
    need(out, "out");
    *out = new lvs_law{TailLaw(alpha, theta)};
  });
}

lvs_status lvs_law_create_uniform(double lo, double hi, lvs_law** out) {
  return guard([&] {
    need(out, "out");
    require(std::isfinite(lo) && std::isfinite(hi) && 0.0 <= lo && lo < hi,
            "uniform law needs 0 <= lo < hi");
    *out = new lvs_law{UniformLaw{lo, hi}};
  });
}

void lvs_law_free(lvs_law* law) { delete law; }

lvs_status lvs_law_tail(const lvs_law* law, double t, double* out) {
  return guard([&] { need(out, "out"); *out = tail_law(law).tail(t); });
}
lvs_status lvs_law_quantile(const lvs_law* law, double u, double* out) {
  return guard([&] { need(out, "out"); *out = tail_law(law).quantile(u); });
}
lvs_status lvs_law_a_n(const lvs_law* law, uint64_t n, double* out) {
  return guard([&] { need(out, "out"); *out = tail_law(law).a_n(n); });
}
lvs_status lvs_law_w_n(const lvs_law* law, uint64_t n, double* out) {
  return guard([&] { need(out, "out"); *out = tail_law(law).w_n(n); });
}
lvs_status lvs_law_kappa_n(const lvs_law* law, uint64_t n, double* out) {
  return guard([&] { need(out, "out"); *out = tail_law(law).kappa_n(n); });
}
lvs_status lvs_law_truncated_moment(const lvs_law* law, double p, double t, double* out) {
  return guard([&] { need(out, "out"); *out = tail_law(law).truncated_moment(p, t); });
}
lvs_status lvs_law_mean(const lvs_law* law, double* out) {
  return guard([&] {
    need(law, "law");
    need(out, "out");
    *out = std::visit([](const auto& l) { return l.mean(); }, law->law);
  });
}

lvs_status lvs_spectrum_sample(const lvs_law* law, int64_t n, lvs_scaling scaling, uint64_t seed, uint64_t rep,
                               lvs_spectrum** out) {
  return guard([&] {
    need(law, "law");
    need(out, "out");
    const ScalingMode mode = to_mode(scaling);
    SpectralSample s = std::visit(
        [&](const auto& l) { return sample_spectrum(l, n, mode, seed, rep); }, law->law);
    *out = new lvs_spectrum{std::move(s)};
  });
}

lvs_status lvs_spectrum_from_matrix(const double* a, int64_t n, lvs_spectrum** out) {
  return guard([&] {
    need(a, "matrix");
    need(out, "out");
    require(n >= 1, "n must be >= 1");
    Matrix m(n, n);
    for (int64_t i = 0; i < n; ++i)
      for (int64_t j = 0; j < n; ++j) m(i, j) = a[i * n + j];
    *out = new lvs_spectrum{eigensolve(m)};
  });
}

void lvs_spectrum_free(lvs_spectrum* s) { delete s; }

int64_t lvs_spectrum_size(const lvs_spectrum* s) { return s == nullptr ? 0 : s->sample.n(); }

lvs_status lvs_spectrum_eigenvalues(const lvs_spectrum* s, double* out, int64_t cap) {
  return guard([&] {
    need(s, "spectrum");
    need(out, "out");
    require(cap >= s->sample.n(), "output buffer too small");
    std::copy(s->sample.eigenvalues.begin(), s->sample.eigenvalues.end(), out);
  });
}

lvs_status lvs_spectrum_moment(const lvs_spectrum* s, int ell, double* out) {
  return guard([&] {
    need(s, "spectrum");
    need(out, "out");
    *out = esd_moment(s->sample, ell);
  });
}

lvs_status lvs_spectrum_stieltjes(const lvs_spectrum* s, double re_z, double im_z, double* out_re, double* out_im) {
  return guard([&] {
    need(s, "spectrum");
    need(out_re, "out_re");
    need(out_im, "out_im");
    const auto m = stieltjes(s->sample, {re_z, im_z});
    *out_re = m.real();
    *out_im = m.imag();
  });
}

lvs_status lvs_spectrum_gap(const lvs_spectrum* s, double* out) {
  return guard([&] {
    need(s, "spectrum");
    need(out, "out");
    *out = spectral_gap(s->sample);
  });
}

lvs_status lvs_spectrum_histogram(const lvs_spectrum* s, int64_t bins, int trim, lvs_histogram** out) {
  return guard([&] {
    need(s, "spectrum");
    need(out, "out");
    *out = new lvs_histogram{histogram(s->sample, bins, trim != 0)};
  });
}

lvs_status lvs_trim_window(int64_t n, int64_t* begin, int64_t* end) {
  return guard([&] {
    require(n >= 1, "n must be >= 1");
    const auto w = trim_window(n);
    if (begin) *begin = w.begin;
    if (end) *end = w.end;
  });
}

lvs_status lvs_histogram_from_values(const double* values, int64_t count, int64_t total, int64_t bins,
                                     lvs_histogram** out) {
  return guard([&] {
    need(values, "values");
    need(out, "out");
    require(count >= 1, "count must be >= 1");
    *out = new lvs_histogram{histogram_values({values, static_cast<std::size_t>(count)}, total, bins)};
  });
}

void lvs_histogram_free(lvs_histogram* h) { delete h; }

int64_t lvs_histogram_bins(const lvs_histogram* h) {
  return h == nullptr ? 0 : static_cast<int64_t>(h->hist.count.size());
}

lvs_status lvs_histogram_bin(const lvs_histogram* h, int64_t i, double* left, double* right, int64_t* count,
                             double* density) {
  return guard([&] {
    need(h, "histogram");
    require(i >= 0 && i < lvs_histogram_bins(h), "bin index out of range");
    const auto k = static_cast<std::size_t>(i);
    if (left) *left = h->hist.left[k];
    if (right) *right = h->hist.right[k];
    if (count) *count = h->hist.count[k];
    if (density) *density = h->hist.density[k];
  });
}

lvs_status lvs_histogram_mass(const lvs_histogram* h, int64_t* kept, int64_t* total) {
  return guard([&] {
    need(h, "histogram");
    if (kept) *kept = h->hist.kept;
    if (total) *total = h->hist.total;
  });
}

lvs_pwit_config lvs_pwit_config_default(void) {
  const PwitShape shape;
  const Materialization m;
  return {shape.alpha, shape.theta, shape.B, shape.H, m.max_depth, m.prune_tol, m.max_vertices};
}

lvs_status lvs_tree_sample(const lvs_pwit_config* config, uint64_t seed, uint64_t rep, lvs_tree** out) {
  return guard([&] {
    need(config, "config");
    need(out, "out");
    const PwitShape shape{config->alpha, config->theta, config->B, config->H};
    const Materialization m{config->max_depth, config->prune_tol, config->max_vertices};
    *out = new lvs_tree{sample_tree(shape, seed, rep, m)};
  });
}

void lvs_tree_free(lvs_tree* t) { delete t; }

int64_t lvs_tree_size(const lvs_tree* t) { return t == nullptr ? 0 : t->tree.size(); }

int lvs_tree_complete(const lvs_tree* t) { return t != nullptr && t->tree.complete() ? 1 : 0; }

int64_t lvs_full_vertex_count(int B, int H) { return B < 1 || H < 0 ? 0 : full_vertex_count(B, H); }

int lvs_moment_depth(int max_ell) { return moment_depth(max_ell); }

lvs_status lvs_operator_build(const lvs_tree* t, lvs_operator_kind kind, double alpha, lvs_operator** out) {
  return guard([&] {
    need(t, "tree");
    need(out, "out");
    *out = new lvs_operator{build_operator(t->tree, to_kind(kind), alpha)};
  });
}

void lvs_operator_free(lvs_operator* op) { delete op; }

int64_t lvs_operator_size(const lvs_operator* op) { return op == nullptr ? 0 : op->op.size(); }

lvs_status lvs_operator_resolvent(const lvs_operator* op, double re_z, double im_z, double* out_re, double* out_im,
                                  double* residual) {
  return guard([&] {
    need(op, "operator");
    need(out_re, "out_re");
    need(out_im, "out_im");
    const auto g = root_resolvent(op->op, {re_z, im_z}, residual);
    *out_re = g.real();
    *out_im = g.imag();
  });
}

lvs_status lvs_operator_moments(const lvs_operator* op, int max_ell, double* out) {
  return guard([&] {
    need(op, "operator");
    need(out, "out");
    const auto p = root_moments(op->op, max_ell);
    std::copy(p.begin(), p.end(), out);
  });
}

lvs_status lvs_discarded_l2_mass(double alpha, int B, double* out) {
  return guard([&] {
    need(out, "out");
    require(B >= 1, "B must be >= 1");
    *out = discarded_l2_mass(alpha, B);
  });
}

lvs_status lvs_pd_sample(double alpha, int k, int64_t tail_terms, uint64_t seed, uint64_t rep, double* out) {
  return guard([&] {
    need(out, "out");
    Rng rng = Rng::for_replication(seed, rep, StreamRole::kPoissonDirichlet);
    const auto v = sample_pd(alpha, k, tail_terms, rng);
    std::copy(v.begin(), v.end(), out);
  });
}

lvs_status lvs_rde_solve(double alpha, const double* t_grid, int64_t count, double fixed_point_tol,
                         double quadrature_tol, int jobs, lvs_rde** out) {
  return guard([&] {
    need(t_grid, "t_grid");
    need(out, "out");
    require(count >= 1, "t grid must not be empty");
    require(fixed_point_tol > 0.0 && quadrature_tol > 0.0, "tolerances must be > 0");
    RdeOptions opts;
    opts.fixed_point_tol = fixed_point_tol;
    opts.quadrature_tol = quadrature_tol;
    *out = new lvs_rde{solve_rde(alpha, {t_grid, static_cast<std::size_t>(count)}, opts, jobs)};
  });
}

void lvs_rde_free(lvs_rde* sol) { delete sol; }

int64_t lvs_rde_size(const lvs_rde* sol) {
  return sol == nullptr ? 0 : static_cast<int64_t>(sol->sol.t_grid.size());
}

lvs_status lvs_rde_row(const lvs_rde* sol, int64_t i, double* t, double* q, double* eg, double* residual) {
  return guard([&] {
    need(sol, "solution");
    require(i >= 0 && i < lvs_rde_size(sol), "row index out of range");
    const auto k = static_cast<std::size_t>(i);
    if (t) *t = sol->sol.t_grid[k];
    if (q) *q = sol->sol.Q[k];
    if (eg) *eg = sol->sol.Eg[k];
    if (residual) *residual = sol->sol.residual[k];
  });
}

lvs_status lvs_rde_phi(double y, double t, double beta, double* out) {
  return guard([&] { need(out, "out"); *out = phi(y, t, beta); });
}

lvs_status lvs_rde_solve_q(double t, double beta, double tol, double* q, double* residual) {
  return guard([&] {
    need(q, "q");
    const auto fp = solve_q(t, beta, tol);
    *q = fp.q;
    if (residual) *residual = fp.residual;
  });
}

lvs_status lvs_rde_expected_g(double t, double beta, double q, double* out) {
  return guard([&] { need(out, "out"); *out = expected_g(t, beta, q); });
}

lvs_status lvs_rde_density_at_zero(double alpha, double* from_fixed_point, double* displayed_formula) {
  return guard([&] {
    const auto d = density_at_zero(alpha);
    if (from_fixed_point) *from_fixed_point = d.from_fixed_point;
    if (displayed_formula) *displayed_formula = d.displayed_formula;
  });
}

lvs_status lvs_rde_tail_constant(double alpha, double* quadrature, double* closed_form) {
  return guard([&] {
    const auto c = tail_constant(alpha);
    if (quadrature) *quadrature = c.quadrature;
    if (closed_form) *closed_form = c.closed_form;
  });
}

lvs_status lvs_rde_tauberian_ratio(double alpha, double t, double* out) {
  return guard([&] { need(out, "out"); *out = tauberian_ratio(alpha, t); });
}

lvs_status lvs_rde_gamma2(double alpha, double* value, double* error) {
  return guard([&] {
    need(value, "value");
    const auto r = gamma2_quadrature(alpha);
    *value = r.value;
    if (error) *error = r.error;
  });
}

lvs_status lvs_stable_laplace(double beta, double t, double* derived, double* displayed) {
  return guard([&] {
    if (derived) *derived = stable_laplace(beta, t);
    if (displayed) *displayed = stable_laplace_displayed(beta, t);
  });
}

lvs_status lvs_invariant_sample(const lvs_law* law, int64_t n, int64_t k, uint64_t seed, uint64_t rep,
                                lvs_invariant** out) {
  return guard([&] {
    need(out, "out");
    const TailLaw& l = tail_law(law);
    require(n >= 1 && k >= 1 && k <= n, "need 1 <= k <= n");
    *out = new lvs_invariant{ranked_stats(sample_row_sums(l, n, seed, rep), l, k)};
  });
}

void lvs_invariant_free(lvs_invariant* inv) { delete inv; }

int64_t lvs_invariant_size(const lvs_invariant* inv) { return inv == nullptr ? 0 : inv->ranked.n; }

int64_t lvs_invariant_top_count(const lvs_invariant* inv) {
  return inv == nullptr ? 0 : static_cast<int64_t>(inv->ranked.scaled_top.size());
}

lvs_status lvs_invariant_rho_tilde(const lvs_invariant* inv, double* out, int64_t cap) {
  return guard([&] {
    need(inv, "invariant");
    need(out, "out");
    require(cap >= inv->ranked.n, "output buffer too small");
    std::copy(inv->ranked.rho_tilde.begin(), inv->ranked.rho_tilde.end(), out);
  });
}

lvs_status lvs_invariant_scaled(const lvs_invariant* inv, double* out, int64_t cap) {
  return guard([&] {
    need(inv, "invariant");
    need(out, "out");
    require(cap >= lvs_invariant_top_count(inv), "output buffer too small");
    std::copy(inv->ranked.scaled_top.begin(), inv->ranked.scaled_top.end(), out);
  });
}

lvs_status lvs_invariant_scale(const lvs_invariant* inv, double* scale, double* b_n) {
  return guard([&] {
    need(inv, "invariant");
    if (scale) *scale = inv->ranked.scale;
    if (b_n) *b_n = inv->ranked.b_n;
  });
}

lvs_status lvs_invariant_pairing_ratio(const lvs_invariant* inv, int64_t j, double* out) {
  return guard([&] {
    need(inv, "invariant");
    need(out, "out");
    *out = pairing_ratio(inv->ranked, j);
  });
}

lvs_status lvs_ppp_top(double alpha, int64_t k, uint64_t seed, uint64_t rep, double* out) {
  return guard([&] {
    need(out, "out");
    Rng rng = Rng::for_replication(seed, rep, StreamRole::kPoissonPoints);
    const auto x = ppp_top_reference(alpha, k, rng);
    std::copy(x.begin(), x.end(), out);
  });
}

lvs_status lvs_ks_two_sample(const double* a, int64_t na, const double* b, int64_t nb, double* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    require(na >= 1 && nb >= 1, "samples must not be empty");
    *out = ks_two_sample({a, static_cast<std::size_t>(na)}, {b, static_cast<std::size_t>(nb)});
  });
}

lvs_status lvs_ks_frechet(const double* samples, int64_t count, double alpha, double* out) {
  return guard([&] {
    need(samples, "samples");
    need(out, "out");
    require(count >= 1, "samples must not be empty");
    require(alpha > 0.0, "alpha must be > 0");
    *out = ks_one_sample({samples, static_cast<std::size_t>(count)},
                         [alpha](double x) { return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -alpha)); });
  });
}

}  // extern "C"
