#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace levyspec::cli {

// Error surfaced to the shell with a specific exit code.
struct CliError : std::runtime_error {
  int code;
  CliError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitNumeric = 3;

struct RunConfig {
  std::string subcommand;
  std::string law = "power";      // power | uniform
  std::string model = "markov";   // iid | markov | markov-kappa | markov-sqrtn
  std::string kind = "S";         // T | K | S
  double alpha = 0.5;
  double theta = 1.0;
  std::int64_t n = 200;
  std::int64_t reps = 1;
  std::uint64_t seed = 1;
  int B = 50;
  int H = 8;
  int max_depth = -1;
  double prune_tol = 1e-10;
  int max_ell = 12;
  std::string t_grid = "0,0.01,0.1,0.5,1,2,5,10,100,1000";
  std::int64_t bins = 0;
  bool trim = true;
  std::int64_t k = 8;
  std::int64_t pd_terms = 100000;
  double fixed_point_tol = 1e-10;
  double quadrature_tol = 1e-9;
  std::string out = ".";
  int jobs = 1;
};

// Flat key=value file; '#' starts a comment. Keys are the long flag names.
std::map<std::string, std::string> read_config_file(const std::string& path);
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& values);

// Every key=value pair, in a fixed order; parseable by read_config_file.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);

std::vector<double> parse_grid(const std::string& text);

// LEVYSPEC_JOBS if set and valid, else 1.
int default_jobs();

}  // namespace levyspec::cli
