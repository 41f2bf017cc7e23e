#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>

#include "cli/output.hpp"

namespace levyspec::cli {

namespace {

using json = nlohmann::ordered_json;

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using LawPtr = std::unique_ptr<lvs_law, Deleter<lvs_law, lvs_law_free>>;
using SpectrumPtr = std::unique_ptr<lvs_spectrum, Deleter<lvs_spectrum, lvs_spectrum_free>>;
using HistogramPtr = std::unique_ptr<lvs_histogram, Deleter<lvs_histogram, lvs_histogram_free>>;
using TreePtr = std::unique_ptr<lvs_tree, Deleter<lvs_tree, lvs_tree_free>>;
using OperatorPtr = std::unique_ptr<lvs_operator, Deleter<lvs_operator, lvs_operator_free>>;
using RdePtr = std::unique_ptr<lvs_rde, Deleter<lvs_rde, lvs_rde_free>>;
using InvariantPtr = std::unique_ptr<lvs_invariant, Deleter<lvs_invariant, lvs_invariant_free>>;

const std::vector<std::string> kEigenColumns{"model", "alpha", "theta", "n", "seed", "rep", "k", "lambda"};
const std::vector<std::string> kHistogramColumns{"bin_left", "bin_right", "count", "density"};

[[noreturn]] void precondition(const std::string& what) { throw CliError(kExitPrecondition, what); }

void require_positive_counts(const RunConfig& c) {
  if (c.n < 1) precondition("--n must be >= 1");
  if (c.reps < 1) precondition("--reps must be >= 1");
  if (c.jobs < 1) precondition("--jobs must be >= 1");
}

LawPtr make_law(const std::string& law, double alpha, double theta) {
  lvs_law* raw = nullptr;
  if (law == "power") {
    check(lvs_law_create(alpha, theta, &raw));
  } else if (law == "uniform") {
    check(lvs_law_create_uniform(0.5, 1.5, &raw));
  } else {
    precondition("--law must be power or uniform");
  }
  return LawPtr(raw);
}

lvs_scaling parse_model(const std::string& model) {
  if (model == "iid") return LVS_SCALE_IID;
  if (model == "markov") return LVS_SCALE_MARKOV;
  if (model == "markov-kappa") return LVS_SCALE_MARKOV_KAPPA;
  if (model == "markov-sqrtn") return LVS_SCALE_MARKOV_SQRTN;
  precondition("--model must be one of iid, markov, markov-kappa, markov-sqrtn");
}

lvs_operator_kind parse_kind(const std::string& kind) {
  if (kind == "T") return LVS_OP_T;
  if (kind == "K") return LVS_OP_K;
  if (kind == "S") return LVS_OP_S;
  precondition("--kind must be T, K or S");
}

// Validates the model against alpha before any sampling, so nothing is
// written for a rejected configuration.
void check_model(const std::string& law, lvs_scaling scaling, double alpha) {
  if (law == "uniform") {
    if (scaling != LVS_SCALE_MARKOV && scaling != LVS_SCALE_MARKOV_SQRTN) {
      precondition("--law uniform supports --model markov and markov-sqrtn only");
    }
    return;
  }
  if (!(alpha > 0.0)) precondition("--alpha must be > 0");
  if (scaling == LVS_SCALE_MARKOV_KAPPA && !(alpha >= 1.0 && alpha < 2.0)) {
    precondition("--model markov-kappa requires alpha in [1,2)");
  }
}

json config_json(const RunConfig& c) {
  json j;
  for (const auto& [k, v] : config_entries(c)) j[k] = v;
  return j;
}

json manifest_base(const RunConfig& c) {
  json m;
  m["schema_version"] = kSchemaVersion;
  m["command"] = c.subcommand;
  m["levyspec_version"] = lvs_version();
  m["config"] = config_json(c);
  m["files"] = json::array();
  return m;
}

void finish(const RunConfig& c, json& manifest, const std::vector<std::pair<std::string, const Csv*>>& csvs,
            const std::string& manifest_name) {
  ensure_directory(c.out);
  for (const auto& [name, csv] : csvs) {
    write_text(join_path(c.out, name), csv->text());
    add_file(manifest, name, *csv);
  }
  write_text(join_path(c.out, manifest_name), manifest.dump(2) + "\n");
}

struct Summary {
  double mean = 0.0;
  double se = 0.0;
};

Summary summarize(const std::vector<double>& v) {
  Summary s;
  if (v.empty()) return s;
  const double n = static_cast<double>(v.size());
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return s;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string model_label(lvs_scaling s) {
  switch (s) {
    case LVS_SCALE_IID: return "iid";
    case LVS_SCALE_MARKOV_KAPPA: return "markov-kappa";
    case LVS_SCALE_MARKOV_SQRTN: return "markov-sqrtn";
    case LVS_SCALE_MARKOV: return "markov";
  }
  return "unknown";
}

struct SpectrumRun {
  std::vector<std::string> rows;         // per replication, eigenvalue CSV rows
  std::vector<std::vector<double>> kept;  // per replication, trimmed (or all) eigenvalues
  std::vector<double> second_moment;      // per replication, over all eigenvalues but the top one
};

SpectrumRun run_spectra(const lvs_law* law, lvs_scaling scaling, double alpha, double theta, std::int64_t n,
                        std::int64_t reps, std::uint64_t seed, bool trim, int jobs) {
  SpectrumRun run;
  run.rows.resize(static_cast<std::size_t>(reps));
  run.kept.resize(static_cast<std::size_t>(reps));
  run.second_moment.resize(static_cast<std::size_t>(reps));
  std::int64_t begin = 0;
  std::int64_t end = n;
  if (trim) check(lvs_trim_window(n, &begin, &end));
  const std::string label = model_label(scaling);
  parallel_for(reps, jobs, [&](std::int64_t rep) {
    lvs_spectrum* raw = nullptr;
    check(lvs_spectrum_sample(law, n, scaling, seed, static_cast<std::uint64_t>(rep), &raw));
    SpectrumPtr s(raw);
    std::vector<double> ev(static_cast<std::size_t>(n));
    check(lvs_spectrum_eigenvalues(s.get(), ev.data(), n));
    CsvRows rows;
    for (std::int64_t k = 0; k < n; ++k) {
      rows.cell(label).cell(alpha).cell(theta).cell(n).cell(seed).cell(rep).cell(k + 1).cell(ev[static_cast<std::size_t>(k)]);
      rows.end_row();
    }
    const auto i = static_cast<std::size_t>(rep);
    run.rows[i] = rows.text();
    run.kept[i].assign(ev.begin() + begin, ev.begin() + end);
    double m2 = 0.0;
    for (std::int64_t k = 0; k + 1 < n; ++k) m2 += ev[static_cast<std::size_t>(k)] * ev[static_cast<std::size_t>(k)];
    run.second_moment[i] = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  });
  return run;
}

Csv pooled_histogram(const SpectrumRun& run, std::int64_t n, std::int64_t bins, std::int64_t* kept_out) {
  std::vector<double> pooled;
  for (const auto& v : run.kept) pooled.insert(pooled.end(), v.begin(), v.end());
  const std::int64_t total = n * static_cast<std::int64_t>(run.kept.size());
  const auto count = static_cast<std::int64_t>(pooled.size());
  if (bins <= 0) bins = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(std::max<std::int64_t>(count, 1)))));
  Csv csv(kHistogramColumns);
  *kept_out = count;
  if (count == 0) return csv;
  lvs_histogram* raw = nullptr;
  check(lvs_histogram_from_values(pooled.data(), count, total, bins, &raw));
  HistogramPtr h(raw);
  for (std::int64_t b = 0; b < lvs_histogram_bins(h.get()); ++b) {
    double left = 0, right = 0, density = 0;
    std::int64_t c = 0;
    check(lvs_histogram_bin(h.get(), b, &left, &right, &c, &density));
    csv.cell(left).cell(right).cell(c).cell(density);
    csv.end_row();
  }
  return csv;
}

}  // namespace

int cmd_esd(const RunConfig& c) {
  require_positive_counts(c);
  const lvs_scaling scaling = parse_model(c.model);
  check_model(c.law, scaling, c.alpha);
  const LawPtr law = make_law(c.law, c.alpha, c.theta);

  const SpectrumRun run = run_spectra(law.get(), scaling, c.alpha, c.theta, c.n, c.reps, c.seed, c.trim, c.jobs);
  Csv eig(kEigenColumns);
  for (const auto& r : run.rows) eig.append(r);
  std::int64_t kept = 0;
  const Csv hist = pooled_histogram(run, c.n, c.bins, &kept);

  json m = manifest_base(c);
  const Summary m2 = summarize(run.second_moment);
  m["summary"] = {{"eigenvalue_rows", c.n * c.reps},
                  {"histogram_kept", kept},
                  {"histogram_total", c.n * c.reps},
                  {"bulk_second_moment_mean", m2.mean},
                  {"bulk_second_moment_se", m2.se}};
  finish(c, m, {{"esd_eigenvalues.csv", &eig}, {"esd_histogram.csv", &hist}}, "esd_manifest.json");
  std::cout << "esd: " << c.n * c.reps << " eigenvalues, " << kept << " kept in histogram\n";
  return 0;
}

int cmd_pwit(const RunConfig& c) {
  if (c.reps < 1) precondition("--reps must be >= 1");
  if (c.jobs < 1) precondition("--jobs must be >= 1");
  if (c.max_ell < 0) precondition("--max-ell must be >= 0");
  const lvs_operator_kind kind = parse_kind(c.kind);
  if (kind != LVS_OP_T && !(c.alpha > 0.0 && c.alpha < 1.0)) precondition("--kind K and S require alpha in (0,1)");
  std::vector<double> t_values;
  for (double t : parse_grid(c.t_grid)) {
    if (t > 0.0) t_values.push_back(t);
  }
  lvs_pwit_config pc = lvs_pwit_config_default();
  pc.alpha = c.alpha;
  pc.theta = c.theta;
  pc.B = c.B;
  pc.H = c.H;
  pc.max_depth = c.max_depth;
  pc.prune_tol = c.prune_tol;

  const auto reps = static_cast<std::size_t>(c.reps);
  std::vector<std::string> moment_rows(reps), resolvent_rows(reps);
  std::vector<std::vector<double>> moments(reps);
  std::vector<std::vector<double>> im_res(reps);
  std::vector<double> sizes(reps), residuals(reps);
  parallel_for(c.reps, c.jobs, [&](std::int64_t rep) {
    const auto i = static_cast<std::size_t>(rep);
    lvs_tree* traw = nullptr;
    check(lvs_tree_sample(&pc, c.seed, static_cast<std::uint64_t>(rep), &traw));
    TreePtr tree(traw);
    lvs_operator* oraw = nullptr;
    check(lvs_operator_build(tree.get(), kind, c.alpha, &oraw));
    OperatorPtr op(oraw);
    sizes[i] = static_cast<double>(lvs_tree_size(tree.get()));
    moments[i].resize(static_cast<std::size_t>(c.max_ell) + 1);
    check(lvs_operator_moments(op.get(), c.max_ell, moments[i].data()));
    CsvRows mr;
    for (int ell = 0; ell <= c.max_ell; ++ell) {
      mr.cell(rep).cell(c.kind).cell(ell).cell(moments[i][static_cast<std::size_t>(ell)]);
      mr.end_row();
    }
    moment_rows[i] = mr.text();
    CsvRows rr;
    double worst = 0.0;
    for (double t : t_values) {
      double re = 0, im = 0, res = 0;
      check(lvs_operator_resolvent(op.get(), 0.0, t, &re, &im, &res));
      worst = std::max(worst, res);
      im_res[i].push_back(im);
      rr.cell(rep).cell(c.kind).cell(t).cell(re).cell(im);
      rr.end_row();
    }
    residuals[i] = worst;
    resolvent_rows[i] = rr.text();
  });

  Csv mcsv({"rep", "kind", "ell", "p_ell"});
  Csv rcsv({"rep", "kind", "t", "re_res", "im_res"});
  for (std::size_t i = 0; i < reps; ++i) {
    mcsv.append(moment_rows[i]);
    rcsv.append(resolvent_rows[i]);
  }

  json m = manifest_base(c);
  json p_summary = json::array();
  for (int ell = 0; ell <= c.max_ell; ++ell) {
    std::vector<double> col;
    for (const auto& v : moments) col.push_back(v[static_cast<std::size_t>(ell)]);
    const Summary s = summarize(col);
    p_summary.push_back({{"ell", ell}, {"mean", s.mean}, {"se", s.se}});
  }
  json r_summary = json::array();
  for (std::size_t j = 0; j < t_values.size(); ++j) {
    std::vector<double> col;
    for (const auto& v : im_res) col.push_back(v[j]);
    const Summary s = summarize(col);
    r_summary.push_back({{"t", t_values[j]}, {"im_mean", s.mean}, {"im_se", s.se}});
  }
  const Summary size = summarize(sizes);
  json summary = {{"p_ell", p_summary},
                  {"im_resolvent", r_summary},
                  {"vertices_mean", size.mean},
                  {"full_vertex_count", lvs_full_vertex_count(c.B, c.H)},
                  {"max_elimination_residual", *std::max_element(residuals.begin(), residuals.end())}};
  if (c.alpha > 0.0 && c.alpha < 2.0) {
    double mass = 0.0;
    check(lvs_discarded_l2_mass(c.alpha, c.B, &mass));
    summary["expected_discarded_l2_mass"] = mass;
  }
  m["summary"] = summary;
  finish(c, m, {{"pwit_moments.csv", &mcsv}, {"pwit_resolvent.csv", &rcsv}}, "pwit_manifest.json");
  std::cout << "pwit: " << c.reps << " trees, mean size " << fmt(size.mean) << " vertices\n";
  for (const auto& p : p_summary) {
    std::cout << "  p_" << p["ell"].get<int>() << " = " << fmt(p["mean"].get<double>()) << " +- "
              << fmt(p["se"].get<double>()) << "\n";
  }
  return 0;
}

int cmd_rde(const RunConfig& c) {
  if (c.jobs < 1) precondition("--jobs must be >= 1");
  if (!(c.alpha > 0.0 && c.alpha <= 1.95)) precondition("--alpha must lie in (0, 1.95] for the rde solver");
  const std::vector<double> grid = parse_grid(c.t_grid);
  lvs_rde* raw = nullptr;
  check(lvs_rde_solve(c.alpha, grid.data(), static_cast<std::int64_t>(grid.size()), c.fixed_point_tol,
                      c.quadrature_tol, c.jobs, &raw));
  RdePtr sol(raw);

  Csv csv({"t", "Q", "Eg"});
  json rows = json::array();
  for (std::int64_t i = 0; i < lvs_rde_size(sol.get()); ++i) {
    double t = 0, q = 0, eg = 0, res = 0;
    check(lvs_rde_row(sol.get(), i, &t, &q, &eg, &res));
    csv.cell(t).cell(q).cell(eg);
    csv.end_row();
    rows.push_back({{"t", t}, {"fixed_point_residual", res}, {"t_beta_Q", std::pow(t, 0.5 * c.alpha) * q}});
  }

  const double beta = 0.5 * c.alpha;
  double q0 = 0, eg0 = 0, fixed_pt = 0, display = 0, dq = 0, dc = 0;
  check(lvs_rde_solve_q(0.0, beta, c.fixed_point_tol, &q0, nullptr));
  check(lvs_rde_expected_g(0.0, beta, q0, &eg0));
  check(lvs_rde_density_at_zero(c.alpha, &fixed_pt, &display));
  check(lvs_rde_tail_constant(c.alpha, &dq, &dc));
  std::ostringstream report;
  report << "alpha=" << fmt(c.alpha) << "\n"
         << "beta=" << fmt(beta) << "\n"
         << "Q0=" << fmt(q0) << "\n"
         << "Eg0=" << fmt(eg0) << "\n"
         << "density_at_zero_from_fixed_point=" << fmt(fixed_pt) << "\n"
         << "density_at_zero_displayed_formula=" << fmt(display) << "\n"
         << "delta_quadrature=" << fmt(dq) << "\n"
         << "delta_closed_form=" << fmt(dc) << "\n";
  json tail = json::array();
  for (double t : {10.0, 100.0, 1000.0}) {
    double ratio = 0;
    check(lvs_rde_tauberian_ratio(c.alpha, t, &ratio));
    report << "tail_ratio_t" << fmt(t) << "=" << fmt(ratio) << "\n";
    tail.push_back({{"t", t}, {"ratio", ratio}});
  }
  json summary = {{"Q0", q0},
                  {"Eg0", eg0},
                  {"density_at_zero", {{"from_fixed_point", fixed_pt}, {"displayed_formula", display}}},
                  {"delta", {{"quadrature", dq}, {"closed_form", dc}}},
                  {"tail_ratio", tail},
                  {"grid", rows}};
  if (c.alpha < 1.0) {
    double g2 = 0, err = 0;
    check(lvs_rde_gamma2(c.alpha, &g2, &err));
    report << "gamma2=" << fmt(g2) << "\n";
    summary["gamma2"] = {{"value", g2}, {"error", err}};
  }
  double lap = 0, lap_display = 0;
  check(lvs_stable_laplace(beta, 1.0, &lap, &lap_display));
  report << "stable_laplace_t1=" << fmt(lap) << "\n"
         << "stable_laplace_t1_displayed=" << fmt(lap_display) << "\n";
  summary["stable_laplace_t1"] = {{"derived", lap}, {"displayed", lap_display}};

  json m = manifest_base(c);
  m["summary"] = summary;
  m["report"] = "rde_report.txt";
  ensure_directory(c.out);
  write_text(join_path(c.out, "rde_report.txt"), report.str());
  finish(c, m, {{"rde_solution.csv", &csv}}, "rde_manifest.json");
  std::cout << report.str();
  return 0;
}

int cmd_invariant(const RunConfig& c) {
  require_positive_counts(c);
  if (!(c.alpha > 0.0 && c.alpha < 2.0)) precondition("--alpha must lie in (0,2) for the invariant command");
  if (c.k < 1 || c.k > c.n) precondition("--k must satisfy 1 <= k <= n");
  if (c.alpha < 1.0 && c.pd_terms < 1) precondition("--pd-terms must be >= 1");
  const LawPtr law = make_law("power", c.alpha, c.theta);

  const auto reps = static_cast<std::size_t>(c.reps);
  std::vector<std::string> rows(reps);
  std::vector<double> sums(reps), top(reps), scaled_top(reps), ratio12(reps);
  std::vector<std::vector<double>> pairing(reps);
  double scale = 0.0, b_n = 0.0;
  parallel_for(c.reps, c.jobs, [&](std::int64_t rep) {
    const auto i = static_cast<std::size_t>(rep);
    lvs_invariant* raw = nullptr;
    check(lvs_invariant_sample(law.get(), c.n, c.k, c.seed, static_cast<std::uint64_t>(rep), &raw));
    InvariantPtr inv(raw);
    std::vector<double> rho(static_cast<std::size_t>(c.n));
    std::vector<double> scaled(static_cast<std::size_t>(c.k));
    check(lvs_invariant_rho_tilde(inv.get(), rho.data(), c.n));
    check(lvs_invariant_scaled(inv.get(), scaled.data(), c.k));
    if (rep == 0) check(lvs_invariant_scale(inv.get(), &scale, &b_n));
    CsvRows r;
    for (std::int64_t j = 0; j < c.k; ++j) {
      r.cell(rep).cell(j + 1).cell(rho[static_cast<std::size_t>(j)]).cell(scaled[static_cast<std::size_t>(j)]);
      r.end_row();
    }
    rows[i] = r.text();
    sums[i] = std::accumulate(rho.begin(), rho.end(), 0.0);
    top[i] = rho[0];
    scaled_top[i] = scaled[0];
    ratio12[i] = c.n >= 2 ? std::abs(rho[0] / rho[1] - 1.0) : 0.0;
    for (std::int64_t j = 1; 2 * j <= c.n && j <= 2; ++j) {
      double pr = 0;
      check(lvs_invariant_pairing_ratio(inv.get(), j, &pr));
      pairing[i].push_back(pr);
    }
  });

  Csv csv({"rep", "j", "rho_tilde_j", "scaled_j"});
  for (const auto& r : rows) csv.append(r);

  json summary;
  summary["rho_tilde_sum"] = sums;
  summary["scale"] = scale;
  summary["b_n"] = b_n;
  summary["median_abs_ratio12_minus_1"] = median_of(ratio12);
  json pr = json::array();
  for (std::size_t j = 0; j < 2; ++j) {
    std::vector<double> col;
    for (const auto& p : pairing) {
      if (p.size() > j) col.push_back(p[j]);
    }
    if (!col.empty()) pr.push_back({{"j", j + 1}, {"median_ratio", median_of(col)}});
  }
  summary["pairing"] = pr;

  std::ostringstream report;
  report << "alpha=" << fmt(c.alpha) << "\nn=" << c.n << "\nreps=" << c.reps << "\n";
  std::vector<double> doubled(reps);
  if (c.alpha < 1.0) {
    for (std::size_t i = 0; i < reps; ++i) doubled[i] = 2.0 * top[i];
    std::vector<double> pd(reps);
    parallel_for(c.reps, c.jobs, [&](std::int64_t rep) {
      double v = 0;
      check(lvs_pd_sample(c.alpha, 1, c.pd_terms, c.seed, static_cast<std::uint64_t>(rep), &v));
      pd[static_cast<std::size_t>(rep)] = v;
    });
    double ks = 0;
    check(lvs_ks_two_sample(doubled.data(), c.reps, pd.data(), c.reps, &ks));
    summary["reference"] = "pd_first_coordinate";
    summary["ks"] = ks;
    if (c.alpha > 0.9) {
      std::cerr << "levyspec: warning: PD tail approximation is coarse for alpha > 0.9\n";
      summary["warning"] = "pd tail approximation coarse for alpha > 0.9";
    }
    report << "ks_2rho1_vs_pd=" << fmt(ks) << "\n";
  } else {
    for (std::size_t i = 0; i < reps; ++i) doubled[i] = 2.0 * scaled_top[i];
    double ks = 0;
    check(lvs_ks_frechet(doubled.data(), c.reps, c.alpha, &ks));
    std::vector<double> ref(reps);
    parallel_for(c.reps, c.jobs, [&](std::int64_t rep) {
      double v = 0;
      check(lvs_ppp_top(c.alpha, 1, c.seed, static_cast<std::uint64_t>(rep), &v));
      ref[static_cast<std::size_t>(rep)] = v;
    });
    double ks2 = 0;
    check(lvs_ks_two_sample(doubled.data(), c.reps, ref.data(), c.reps, &ks2));
    summary["reference"] = "frechet_x1";
    summary["ks"] = ks;
    summary["ks_vs_ppp_samples"] = ks2;
    report << "ks_2scaled1_vs_frechet=" << fmt(ks) << "\nks_2scaled1_vs_ppp_samples=" << fmt(ks2) << "\n";
  }
  report << "median_abs_ratio12_minus_1=" << fmt(summary["median_abs_ratio12_minus_1"].get<double>()) << "\n";
  for (const auto& p : pr) {
    report << "pairing_ratio_j" << p["j"].get<int>() << "_median=" << fmt(p["median_ratio"].get<double>()) << "\n";
  }

  json m = manifest_base(c);
  m["summary"] = summary;
  m["report"] = "invariant_report.txt";
  ensure_directory(c.out);
  write_text(join_path(c.out, "invariant_report.txt"), report.str());
  finish(c, m, {{"invariant_ranked.csv", &csv}}, "invariant_manifest.json");
  std::cout << report.str();
  return 0;
}

int cmd_figure1(const RunConfig& c) {
  require_positive_counts(c);
  const std::vector<double> alphas{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  struct Panel {
    Csv eig{kEigenColumns};
    Csv hist{kHistogramColumns};
    json meta;
  };
  std::vector<Panel> panels(alphas.size());
  for (std::size_t p = 0; p < alphas.size(); ++p) {
    const double a = alphas[p];
    std::string law_name = "power";
    lvs_scaling scaling = LVS_SCALE_MARKOV;
    std::string factor = "1";
    std::string overlay = "none";
    if (a == 2.0) {
      law_name = "uniform";
      scaling = LVS_SCALE_MARKOV_SQRTN;
      factor = "sqrt(n)";
      overlay = "semicircle";
    } else if (a >= 1.0) {
      scaling = LVS_SCALE_MARKOV_KAPPA;
      factor = a == 1.0 ? "kappa_n = log(n)" : "kappa_n * mean";
      if (a > 1.0) overlay = "rde_proxy";
    }
    const LawPtr law = make_law(law_name, a, 1.0);
    // Each panel gets its own seed stream so panels do not share draws.
    const std::uint64_t panel_seed = c.seed * 1000003ull + p;
    const SpectrumRun run = run_spectra(law.get(), scaling, a, 1.0, c.n, c.reps, panel_seed, c.trim, c.jobs);
    Panel& out = panels[p];
    for (const auto& r : run.rows) out.eig.append(r);
    std::int64_t kept = 0;
    out.hist = pooled_histogram(run, c.n, c.bins, &kept);
    char tag[16];
    std::snprintf(tag, sizeof tag, "%.2f", a);
    const Summary m2 = summarize(run.second_moment);
    out.meta = {{"alpha", a},
                {"law", law_name == "uniform" ? "uniform[0.5,1.5]" : "inverse-power"},
                {"model", model_label(scaling)},
                {"scaling", factor},
                {"seed", panel_seed},
                {"histogram_csv", std::string("figure1_alpha_") + tag + ".csv"},
                {"eigenvalues_csv", std::string("figure1_alpha_") + tag + "_eigenvalues.csv"},
                {"overlay", overlay},
                {"kept", kept},
                {"total", c.n * c.reps},
                {"bulk_second_moment", m2.mean}};
    if (a == 2.0) out.meta["sigma2"] = 1.0 / 12.0;
    if (overlay == "rde_proxy") {
      const double t = 0.02;
      lvs_rde* raw = nullptr;
      check(lvs_rde_solve(a, &t, 1, c.fixed_point_tol, c.quadrature_tol, 1, &raw));
      RdePtr sol(raw);
      double eg = 0;
      check(lvs_rde_row(sol.get(), 0, nullptr, nullptr, &eg, nullptr));
      out.meta["rde_proxy"] = {{"t", t}, {"density_at_zero_proxy", eg / std::numbers::pi}};
    }
  }
  json m = manifest_base(c);
  m["panels"] = json::array();
  std::vector<std::pair<std::string, const Csv*>> files;
  for (const auto& p : panels) {
    m["panels"].push_back(p.meta);
    files.emplace_back(p.meta["histogram_csv"].get<std::string>(), &p.hist);
    files.emplace_back(p.meta["eigenvalues_csv"].get<std::string>(), &p.eig);
  }
  finish(c, m, files, "figure1_manifest.json");
  std::cout << "figure1: " << panels.size() << " panels written to " << c.out << "\n";
  return 0;
}

int cmd_selftest(const RunConfig&) {
  int failures = 0;
  const auto report = [&](const char* name, bool ok, double got, double want) {
    std::printf("%s %-28s got %.12g want %.12g\n", ok ? "ok  " : "FAIL", name, got, want);
    if (!ok) ++failures;
  };
  const auto close = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };

  const LawPtr half = make_law("power", 0.5, 1.0);
  double v = 0;
  check(lvs_law_a_n(half.get(), 100, &v));
  report("a_n(alpha=0.5, n=100)", close(v, 1e4, 1e-8), v, 1e4);
  check(lvs_law_w_n(half.get(), 16, &v));
  report("w_n(alpha=0.5, n=16)", close(v, 15.0, 1e-12), v, 15.0);

  check(lvs_rde_solve_q(0.0, 0.25, 1e-10, &v, nullptr));
  const double q0 = 1.0 / std::sqrt(std::tgamma(1.25) * std::tgamma(0.75));
  report("Q(0), alpha=0.5", close(v, q0, 1e-12), v, q0);
  double fixed_pt = 0, display = 0;
  check(lvs_rde_density_at_zero(1.0, &fixed_pt, &display));
  report("density at 0, alpha=1", close(fixed_pt, 1.0 / std::numbers::pi, 1e-12), fixed_pt, 1.0 / std::numbers::pi);
  double dq = 0;
  check(lvs_rde_tail_constant(1.0, &dq, nullptr));
  report("Delta(1)", close(dq, std::numbers::pi, 1e-8), dq, std::numbers::pi);
  double g2 = 0;
  check(lvs_rde_gamma2(0.5, &g2, nullptr));
  report("gamma2(0.5)", close(g2, 0.3767747598597706, 1e-8), g2, 0.3767747598597706);

  lvs_pwit_config pc = lvs_pwit_config_default();
  pc.H = 0;
  lvs_tree* traw = nullptr;
  check(lvs_tree_sample(&pc, 1, 0, &traw));
  TreePtr tree(traw);
  lvs_operator* oraw = nullptr;
  check(lvs_operator_build(tree.get(), LVS_OP_T, 0.5, &oraw));
  OperatorPtr op(oraw);
  double re = 0, im = 0;
  check(lvs_operator_resolvent(op.get(), 0.0, 2.0, &re, &im, nullptr));
  report("root-only resolvent at 2i", close(re, 0.0, 0.0) && close(im, 0.5, 1e-15), im, 0.5);

  std::printf("%s\n", failures == 0 ? "selftest passed" : "selftest FAILED");
  return failures == 0 ? 0 : kExitNumeric;
}

}  // namespace levyspec::cli
