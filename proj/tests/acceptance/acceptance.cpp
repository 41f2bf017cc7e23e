// Acceptance suite A1-A11. One PASS/FAIL line per criterion, followed by
// indented detail lines with the measured values.
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "core/experiments.hpp"
#include "core/heavy_tail.hpp"
#include "core/invariant.hpp"
#include "core/matrix_models.hpp"
#include "core/pwit.hpp"
#include "core/rde.hpp"
#include "core/spectra.hpp"
#include "core/stats.hpp"

using namespace levyspec;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void note(const char* fmt, ...) __attribute__((format(printf, 2, 3))) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    lines.emplace_back(buf);
  }
  // Records a sub-check and folds it into the verdict.
  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    lines.push_back(std::string(ok ? "[ok]   " : "[fail] ") + buf);
    pass = pass && ok;
  }
};

std::uint64_t g_seed = 20240601;

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Outcome A1: spectrum of K equals spectrum of S.
Outcome a1() {
  Outcome o;
  double worst = 0.0;
  for (int r = 0; r < 50; ++r) {
    const TailLaw law(r % 2 ? 0.5 : 1.5);
    Rng rng = Rng::for_replication(g_seed, static_cast<std::uint64_t>(r), StreamRole::kWeights);
    const auto e = build_ensemble(sample_weights(law, 8, rng));
    Eigen::SelfAdjointEigenSolver<Matrix> es(e.S, Eigen::EigenvaluesOnly);
    for (int k = 0; k < 8; ++k) {
      const Matrix m = e.K - es.eigenvalues()(k) * Matrix::Identity(8, 8);
      worst = std::max(worst, std::abs(m.partialPivLu().determinant()));
    }
  }
  o.check(worst < 1e-8, "max |det(K - lambda I)| over 50 ensembles = %.3e (< 1e-8)", worst);
  return o;
}

Outcome a2() {
  Outcome o;
  const UniformLaw law{0.5, 1.5};
  const std::int64_t n = 1000;
  std::vector<double> m2, m4;
  for (int r = 0; r < 10; ++r) {
    const auto s = sample_spectrum(law, n, ScalingMode::kMarkovSqrtN, g_seed, static_cast<std::uint64_t>(r));
    double a = 0.0, b = 0.0;
    // Drop lambda_1 = sqrt(n), the top of the ascending list.
    for (std::int64_t k = 0; k + 1 < n; ++k) {
      const double x2 = s.eigenvalues[k] * s.eigenvalues[k];
      a += x2;
      b += x2 * x2;
    }
    m2.push_back(a / static_cast<double>(n - 1));
    m4.push_back(b / static_cast<double>(n - 1));
  }
  const double sigma2 = law.variance() / (law.mean() * law.mean());
  const double got2 = mean_of(m2), got4 = mean_of(m4);
  o.check(std::abs(got2 / sigma2 - 1.0) < 0.10, "second moment %.6f vs sigma^2 = %.6f (rel err %.4f, < 0.10)", got2,
          sigma2, std::abs(got2 / sigma2 - 1.0));
  const double want4 = 2.0 * sigma2 * sigma2;
  o.check(std::abs(got4 / want4 - 1.0) < 0.15, "fourth moment %.6f vs 2 sigma^4 = %.6f (rel err %.4f, < 0.15)", got4,
          want4, std::abs(got4 / want4 - 1.0));
  return o;
}

Outcome a3() {
  Outcome o;
  for (double alpha : {0.5, 1.0, 1.5}) {
    const double beta = alpha / 2;
    const double q = solve_q(0.0, beta).q;
    const double want = 1.0 / std::sqrt(std::tgamma(beta + 1.0) * std::tgamma(1.0 - beta));
    o.check(std::abs(q - want) < 1e-6, "alpha=%.1f Q(0)=%.10f closed form %.10f", alpha, q, want);
    o.check(std::abs(phi(q, 0.0, beta) - q) < 1e-12, "alpha=%.1f fixed-point residual at t=0: %.2e", alpha,
            std::abs(phi(q, 0.0, beta) - q));
    o.note("  alpha=%.1f Q(1e-8)=%.10f (quadrature route, t -> 0)", alpha, solve_q(1e-8, beta).q);
  }
  return o;
}

// Mean over reps of Im m(i t) for a sampled model.
std::vector<double> empirical_im_m(const TailLaw& law, std::int64_t n, ScalingMode mode, int reps,
                                   const std::vector<double>& ts, std::uint64_t seed) {
  std::vector<double> acc(ts.size(), 0.0);
  for (int r = 0; r < reps; ++r) {
    const auto s = sample_spectrum(law, n, mode, seed, static_cast<std::uint64_t>(r));
    for (std::size_t i = 0; i < ts.size(); ++i) acc[i] += stieltjes(s, {0.0, ts[i]}).imag() / reps;
  }
  return acc;
}

Outcome a4() {
  Outcome o;
  const TailLaw law(1.0, 0.5);
  const double t = 0.05;
  const double emp = empirical_im_m(law, 2000, ScalingMode::kIidAn, 20, {t}, g_seed)[0] / std::numbers::pi;
  const auto d = density_at_zero(1.0);
  const bool near_fixed_pt = std::abs(emp / d.from_fixed_point - 1.0) < 0.20;
  const bool near_display = std::abs(emp / d.displayed_formula - 1.0) < 0.20;
  o.note("smoothed density at 0: %.5f; 1/pi = %.5f; 4/pi = %.5f", emp, d.from_fixed_point, d.displayed_formula);
  o.check(near_fixed_pt != near_display, "matches exactly one closed form within 20%% (winner: %s)",
          near_fixed_pt ? (near_display ? "both" : "1/pi (fixed-point route)") : (near_display ? "4/pi (display)" : "none"));
  const double solver = expected_g(t, 0.5, solve_q(t, 0.5).q) / std::numbers::pi;
  o.check(std::abs(emp - solver) < 0.05, "solver Eg(%.2f)/pi = %.5f, |diff| = %.5f (< 0.05)", t, solver,
          std::abs(emp - solver));
  return o;
}

Outcome a5() {
  Outcome o;
  const double alpha = 1.5;
  const std::vector<double> ts{0.5, 1.0, 2.0};
  std::vector<double> solver;
  for (double t : ts) solver.push_back(expected_g(t, alpha / 2, solve_q(t, alpha / 2).q));
  const TailLaw law(alpha, 0.5);
  for (auto mode : {ScalingMode::kIidAn, ScalingMode::kMarkovKappa}) {
    const auto emp = empirical_im_m(law, 2000, mode, 20, ts, g_seed);
    double sup = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      o.note("%s t=%.1f Im m_emp=%.5f solver Eg=%.5f", std::string(to_string(mode)).c_str(), ts[i], emp[i], solver[i]);
      sup = std::max(sup, std::abs(emp[i] - solver[i]));
    }
    o.check(sup < 0.05, "%s sup |Im m_emp - Eg| = %.5f (< 0.05)", std::string(to_string(mode)).c_str(), sup);
  }
  return o;
}

Outcome a6() {
  Outcome o;
  const double alpha = 0.5;
  const double g2 = gamma2_quadrature(alpha).value;
  Materialization ball;
  ball.max_depth = moment_depth(2);
  std::vector<double> p2;
  for (int r = 0; r < 2000; ++r) {
    const auto tree = sample_tree(PwitShape{alpha, 1.0, 50, 8}, g_seed, static_cast<std::uint64_t>(r), ball);
    p2.push_back(root_moments(build_operator(tree, OperatorKind::kS, alpha), 2)[2]);
  }
  const auto pw = mean_se(p2);
  o.note("gamma2_quadrature(0.5) = %.6f", g2);
  o.check(std::abs(pw.mean - g2) < 0.01, "PWIT mean p2 over 2000 trees = %.5f +- %.5f (se), |diff| = %.5f (< 0.01)",
          pw.mean, pw.se, std::abs(pw.mean - g2));
  const TailLaw law(alpha);
  std::vector<double> tr;
  for (int r = 0; r < 20; ++r) {
    Rng w = Rng::for_replication(g_seed, static_cast<std::uint64_t>(r), StreamRole::kWeights);
    const auto e = build_ensemble(sample_weights(law, 1000, w));
    tr.push_back(e.S.squaredNorm() / 1000.0);  // tr(K^2) = tr(S^2)
  }
  const auto mt = mean_se(tr);
  o.check(std::abs(mt.mean - g2) < 0.02, "matrix (1/n) tr K^2, n=1000, 20 reps = %.5f +- %.5f, |diff| = %.5f (< 0.02)",
          mt.mean, mt.se, std::abs(mt.mean - g2));
  return o;
}

Outcome a7() {
  Outcome o;
  for (double alpha : {0.75, 1.0, 1.25}) {
    const double r = tauberian_ratio(alpha, 100.0);
    o.check(r >= 0.98 && r <= 1.02, "alpha=%.2f ratio at t=100: %.6f (in [0.98, 1.02])", alpha, r);
    o.note("  alpha=%.2f ratio at t=1e3: %.6f, t=1e4: %.6f, t=1e5: %.6f", alpha, tauberian_ratio(alpha, 1e3),
           tauberian_ratio(alpha, 1e4), tauberian_ratio(alpha, 1e5));
  }
  return o;
}

Outcome a8() {
  Outcome o;
  std::int64_t nonzero = 0, checked = 0;
  for (int r = 0; r < 500; ++r) {
    const auto tree = sample_tree(PwitShape{0.5, 0.5, 10, 4}, g_seed, static_cast<std::uint64_t>(r));
    for (auto kind : {OperatorKind::kT, OperatorKind::kS}) {
      const auto p = root_moments(build_operator(tree, kind, 0.5), 11);
      for (int ell = 1; ell <= 11; ell += 2) {
        ++checked;
        nonzero += p[static_cast<std::size_t>(ell)] != 0.0;
      }
    }
  }
  o.check(nonzero == 0, "odd moments p_1..p_11 on 500 trees (B=10, H=4), kinds T and S: %lld of %lld nonzero",
          static_cast<long long>(nonzero), static_cast<long long>(checked));
  return o;
}

Outcome a9() {
  Outcome o;
  const std::int64_t n = 1000;
  const int reps = 200;
  {
    const TailLaw law(0.5);
    std::vector<double> top, ratio;
    for (int r = 0; r < reps; ++r) {
      const auto inv = ranked_stats(sample_row_sums(law, n, g_seed, static_cast<std::uint64_t>(r)), law, 2);
      top.push_back(2.0 * inv.rho_tilde[0]);
      ratio.push_back(std::abs(inv.rho_tilde[0] / inv.rho_tilde[1] - 1.0));
    }
    Rng pd = Rng::for_replication(g_seed, 0, StreamRole::kPoissonDirichlet);
    std::vector<double> ref(20000);
    for (auto& v : ref) v = sample_pd(0.5, 1, 100000, pd)[0];
    const double ks = ks_two_sample(top, ref);
    o.check(ks < 0.05, "alpha=0.5 KS(2 rho~_1, PD(0.5,0) V_1) = %.4f (< 0.05; 20000 reference draws)", ks);
    const double med = median(ratio);
    o.check(med < 0.05, "alpha=0.5 median |rho~_1/rho~_2 - 1| = %.3e (< 0.05)", med);
    // Null spread of the same statistic: 200 exact PD draws against the
    // reference (10^4 explicit points is ample at alpha = 0.5).
    std::vector<double> null_ks;
    for (int k = 0; k < 200; ++k) {
      std::vector<double> s(reps);
      for (auto& v : s) v = sample_pd(0.5, 1, 10000, pd)[0];
      null_ks.push_back(ks_two_sample(s, ref));
    }
    std::sort(null_ks.begin(), null_ks.end());
    const double frac = static_cast<double>(std::lower_bound(null_ks.begin(), null_ks.end(), 0.05) - null_ks.begin()) /
                        static_cast<double>(null_ks.size());
    o.note("  null KS for 200 exact PD draws: median %.4f, 95%% %.4f, P(KS < 0.05) = %.2f", null_ks[100],
           null_ks[190], frac);
  }
  {
    const double alpha = 1.5;
    const TailLaw law(alpha);
    std::vector<double> top, centered;
    for (int r = 0; r < reps; ++r) {
      const Vector rho = sample_row_sums(law, n, g_seed, static_cast<std::uint64_t>(r));
      const auto inv = ranked_stats(rho, law, 1);
      top.push_back(2.0 * inv.scaled_top[0]);
      // Diagnostic: remove the law-of-large-numbers part n*mean of the top row.
      centered.push_back((rho.maxCoeff() - static_cast<double>(n) * law.mean()) / inv.b_n);
    }
    const auto frechet = [alpha](double x) { return x > 0.0 ? std::exp(-std::pow(x, -alpha)) : 0.0; };
    const double ks = ks_one_sample(top, frechet);
    o.check(ks < 0.07, "alpha=1.5 KS(2 kappa_{m_n} mean rho~_1, Frechet) = %.4f (< 0.07)", ks);
    o.note("  diagnostic: KS((X_1 - n mean)/b_n, Frechet) = %.4f; n mean / b_n = %.3f",
           ks_one_sample(centered, frechet), static_cast<double>(n) * law.mean() / law.a_n(n * (n + 1) / 2));
  }
  return o;
}

Outcome a10() {
  Outcome o;
  // Schatten bound on the sampled matrices below.
  int violations = 0, matrices = 0;
  for (int r = 0; r < 10; ++r) {
    for (double alpha : {0.5, 1.5}) {
      const TailLaw law(alpha, 0.5);
      for (auto mode : {ScalingMode::kIidAn, ScalingMode::kMarkovUnscaled}) {
        const Matrix m = sample_model_matrix(law, 200, mode, g_seed, static_cast<std::uint64_t>(r));
        const auto s = eigensolve(m);
        for (double rr : {0.5, 1.0, 2.0}) violations += !schatten_check(m, s.eigenvalues, rr).holds;
        ++matrices;
      }
    }
  }
  o.check(violations == 0, "Schatten bound, r in {0.5,1,2}: %d violations on %d matrices", violations, matrices);

  {
    const double alpha = 0.7;
    const TailLaw law(alpha);
    Rng rng = Rng::for_replication(g_seed, 0, StreamRole::kGeneric);
    std::vector<double> maxima(5000);
    for (auto& m : maxima) {
      double x = 0.0;
      for (int i = 0; i < 1000; ++i) x = std::max(x, law.sample(rng));
      m = x / law.a_n(1000);
    }
    const double ks = ks_one_sample(maxima, [&](double x) { return std::exp(-std::pow(x, -alpha)); });
    o.check(ks < 0.03, "Frechet KS, alpha=0.7, max of 1000 over 5000 reps = %.4f (< 0.03)", ks);
  }
  {
    const double alpha = 1.2;
    const TailLaw law(alpha);
    const int n = 2000;
    Rng a = Rng::for_replication(g_seed, 1, StreamRole::kGeneric);
    Rng b = Rng::for_replication(g_seed, 2, StreamRole::kGeneric);
    std::vector<double> direct(5000), repr(5000);
    for (std::size_t r = 0; r < direct.size(); ++r) {
      double m = 0.0;
      for (int i = 0; i < n; ++i) m = std::max(m, law.sample(a));
      direct[r] = m;
      const double g1 = b.exponential();
      double g = g1;
      for (int i = 1; i <= n; ++i) g += b.exponential();
      repr[r] = law.quantile(g1 / g);
    }
    const double ks = ks_two_sample(direct, repr);
    o.check(ks < 0.03, "order-statistics representation, n=2000, 5000 reps: two-sample KS = %.4f (< 0.03)", ks);
  }
  for (double alpha : {0.5, 1.0, 1.5}) {
    const TailLaw law(alpha);
    const double a = law.a_n(10000);
    const double ratio = law.truncated_moment(2.0, a) * 1e4 / (a * a) / (alpha / (2.0 - alpha));
    o.check(std::abs(ratio - 1.0) <= 0.01, "truncated second moment ratio at n=1e4, alpha=%.1f: %.5f (within 1%%)",
            alpha, ratio);
  }
  {
    Materialization m;
    m.prune_tol = 1e-10;
    double worst = 0.0;
    for (int r = 0; r < 5; ++r) {
      const auto tree = sample_tree(PwitShape{0.5, 1.0, 50, 8}, g_seed, static_cast<std::uint64_t>(r), m);
      const auto op = build_operator(tree, OperatorKind::kS, 0.5);
      const std::complex<double> z(0.0, 10.0);
      const auto p = root_moments(op, 12);
      std::complex<double> series = 0.0;
      for (int ell = 0; ell <= 12; ++ell) series -= p[static_cast<std::size_t>(ell)] / std::pow(z, ell + 1);
      worst = std::max(worst, std::abs(root_resolvent(op, z) - series));
    }
    o.check(worst < 1e-6, "resolvent vs Neumann series at z=10i, 5 trees (B=50, H=8): max |diff| = %.3e", worst);
  }
  {
    const TailLaw law(0.5);
    std::vector<double> med;
    for (std::int64_t n : {200, 400, 800, 1600}) {
      std::vector<double> gaps;
      for (int r = 0; r < 20; ++r) {
        EigenOptions opts;
        opts.residual_check_max_n = 0;
        gaps.push_back(spectral_gap(
            sample_spectrum(law, n, ScalingMode::kMarkovUnscaled, g_seed, static_cast<std::uint64_t>(r), opts)));
      }
      med.push_back(median(gaps));
    }
    const bool dec = med[0] > med[1] && med[1] > med[2] && med[2] > med[3];
    o.check(dec, "median spectral gap, alpha=0.5, n=200..1600: %.4g %.4g %.4g %.4g (strictly decreasing)", med[0],
            med[1], med[2], med[3]);
  }
  return o;
}

Outcome a11() {
  Outcome o;
  const double g = gamma2_quadrature(0.05).value;
  o.check(std::abs(g - 0.5) < 0.05, "gamma2_quadrature(0.05) = %.6f (within 0.05 of 1/2)", g);
  Materialization ball;
  ball.max_depth = moment_depth(2);
  std::vector<double> p2;
  for (int r = 0; r < 2000; ++r) {
    const auto tree = sample_tree(PwitShape{0.05, 1.0, 50, 8}, g_seed, static_cast<std::uint64_t>(r), ball);
    p2.push_back(root_moments(build_operator(tree, OperatorKind::kS, 0.05), 2)[2]);
  }
  const auto m = mean_se(p2);
  o.check(std::abs(m.mean - 0.5) < 0.07, "PWIT mean p2 at alpha=0.05, 2000 trees = %.5f +- %.5f (within 0.07 of 1/2)",
          m.mean, m.se);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria A1-A11"};
  std::vector<std::string> only;
  app.add_option("--only", only, "run only these criteria (e.g. A4 A7)");
  app.add_option("--seed", g_seed, "base seed");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},  {"A5", a5},  {"A6", a6},
      {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}, {"A11", a11},
  };
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.check(false, "exception: %s", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%-4s %s  (%.1f s)\n", id.c_str(), o.pass ? "PASS" : "FAIL", secs);
    for (const auto& line : o.lines) std::printf("       %s\n", line.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
