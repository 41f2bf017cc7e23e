#include <cstring>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"

using namespace levyspec::cli;

namespace {

// --config must be applied before flags are parsed so that flags win.
std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) return argv[i + 1];
    if (std::strncmp(argv[i], "--config=", 9) == 0) return argv[i] + 9;
  }
  return "";
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--alpha", c.alpha, "tail index");
  sub->add_option("--theta", c.theta, "probability of a positive sign");
  sub->add_option("--seed", c.seed, "base seed");
  sub->add_option("--reps", c.reps, "replications");
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--jobs", c.jobs, "worker threads (default: LEVYSPEC_JOBS or 1)");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  cfg.jobs = default_jobs();
  std::string config_path;
  bool print_config = false;

  CLI::App app{"Spectra of heavy-tailed random reversible Markov kernels"};
  app.require_subcommand(1);
  app.add_option("--config", config_path, "key=value configuration file; flags override it");
  app.add_flag("--print-config", print_config, "print the effective configuration and exit");
  app.fallthrough();

  auto* esd = app.add_subcommand("esd", "eigenvalues and histogram of a matrix ensemble");
  add_common(esd, cfg);
  esd->add_option("--model", cfg.model, "iid | markov | markov-kappa | markov-sqrtn");
  esd->add_option("--law", cfg.law, "power | uniform");
  esd->add_option("--n", cfg.n, "matrix dimension");
  esd->add_option("--bins", cfg.bins, "histogram bins (0: sqrt of kept count)");
  esd->add_option("--trim", cfg.trim, "drop the extreme log(n) eigenvalues from the histogram");

  auto* pwit = app.add_subcommand("pwit", "root spectral measure on truncated PWITs");
  add_common(pwit, cfg);
  pwit->add_option("--kind", cfg.kind, "T | K | S");
  pwit->add_option("--B", cfg.B, "branching width");
  pwit->add_option("--H", cfg.H, "depth");
  pwit->add_option("--max-depth", cfg.max_depth, "materialized depth (-1: H)");
  pwit->add_option("--prune-tol", cfg.prune_tol, "skip subtrees with smaller path influence");
  pwit->add_option("--max-ell", cfg.max_ell, "largest moment index");
  pwit->add_option("--t-grid", cfg.t_grid, "comma-separated t values for resolvents at z = it");

  auto* rde = app.add_subcommand("rde", "solve the imaginary-axis fixed point");
  rde->add_option("--alpha", cfg.alpha, "tail index");
  rde->add_option("--t-grid", cfg.t_grid, "comma-separated t values");
  rde->add_option("--fixed-point-tol", cfg.fixed_point_tol, "bisection tolerance");
  rde->add_option("--quadrature-tol", cfg.quadrature_tol, "absolute quadrature tolerance");
  rde->add_option("--out", cfg.out, "output directory");
  rde->add_option("--jobs", cfg.jobs, "worker threads");

  auto* inv = app.add_subcommand("invariant", "ranked invariant measure");
  add_common(inv, cfg);
  inv->add_option("--n", cfg.n, "matrix dimension");
  inv->add_option("--k", cfg.k, "ranked coordinates to emit");
  inv->add_option("--pd-terms", cfg.pd_terms, "explicit points in the PD reference sampler");

  auto* fig = app.add_subcommand("figure1", "eight scaled-ESD histogram panels");
  fig->add_option("--n", cfg.n, "matrix dimension");
  fig->add_option("--reps", cfg.reps, "replications per panel");
  fig->add_option("--seed", cfg.seed, "base seed");
  fig->add_option("--bins", cfg.bins, "histogram bins (0: sqrt of kept count)");
  fig->add_option("--trim", cfg.trim, "drop the extreme log(n) eigenvalues");
  fig->add_option("--out", cfg.out, "output directory");
  fig->add_option("--jobs", cfg.jobs, "worker threads");

  app.add_subcommand("selftest", "closed-form checks through the C API");

  try {
    const std::string path = find_config_path(argc, argv);
    if (!path.empty()) apply_config(cfg, read_config_file(path));
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return kExitPrecondition;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (print_config) {
      std::cout << "subcommand=" << cfg.subcommand << "\n";
      for (const auto& [k, v] : config_entries(cfg)) std::cout << k << "=" << v << "\n";
      return 0;
    }
    if (cfg.subcommand == "esd") return cmd_esd(cfg);
    if (cfg.subcommand == "pwit") return cmd_pwit(cfg);
    if (cfg.subcommand == "rde") return cmd_rde(cfg);
    if (cfg.subcommand == "invariant") return cmd_invariant(cfg);
    if (cfg.subcommand == "figure1") return cmd_figure1(cfg);
    return cmd_selftest(cfg);
  } catch (const CliError& e) {
    std::cerr << "levyspec: error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "levyspec: error: " << e.what() << "\n";
    return 1;
  }
}
