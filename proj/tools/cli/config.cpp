#include "cli/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli/output.hpp"

namespace levyspec::cli {

namespace {

std::string trim_ws(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw CliError(kExitPrecondition, "config: invalid value '" + value + "' for key '" + key + "'");
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) bad_value(key, value);
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  bad_value(key, value);
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitPrecondition, "config: cannot open '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim_ws(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CliError(kExitPrecondition, "config: " + path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    values[trim_ws(line.substr(0, eq))] = trim_ws(line.substr(eq + 1));
  }
  return values;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& values) {
  for (const auto& [key, v] : values) {
    if (key == "law") cfg.law = v;
    else if (key == "model") cfg.model = v;
    else if (key == "kind") cfg.kind = v;
    else if (key == "alpha") cfg.alpha = parse_number<double>(key, v);
    else if (key == "theta") cfg.theta = parse_number<double>(key, v);
    else if (key == "n") cfg.n = parse_number<std::int64_t>(key, v);
    else if (key == "reps") cfg.reps = parse_number<std::int64_t>(key, v);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, v);
    else if (key == "B") cfg.B = parse_number<int>(key, v);
    else if (key == "H") cfg.H = parse_number<int>(key, v);
    else if (key == "max-depth") cfg.max_depth = parse_number<int>(key, v);
    else if (key == "prune-tol") cfg.prune_tol = parse_number<double>(key, v);
    else if (key == "max-ell") cfg.max_ell = parse_number<int>(key, v);
    else if (key == "t-grid") cfg.t_grid = v;
    else if (key == "bins") cfg.bins = parse_number<std::int64_t>(key, v);
    else if (key == "trim") cfg.trim = parse_bool(key, v);
    else if (key == "k") cfg.k = parse_number<std::int64_t>(key, v);
    else if (key == "pd-terms") cfg.pd_terms = parse_number<std::int64_t>(key, v);
    else if (key == "fixed-point-tol") cfg.fixed_point_tol = parse_number<double>(key, v);
    else if (key == "quadrature-tol") cfg.quadrature_tol = parse_number<double>(key, v);
    else if (key == "out") cfg.out = v;
    else if (key == "jobs") cfg.jobs = parse_number<int>(key, v);
    else throw CliError(kExitPrecondition, "config: unknown key '" + key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
  return {
      {"law", c.law},
      {"model", c.model},
      {"kind", c.kind},
      {"alpha", fmt_short(c.alpha)},
      {"theta", fmt_short(c.theta)},
      {"n", std::to_string(c.n)},
      {"reps", std::to_string(c.reps)},
      {"seed", std::to_string(c.seed)},
      {"B", std::to_string(c.B)},
      {"H", std::to_string(c.H)},
      {"max-depth", std::to_string(c.max_depth)},
      {"prune-tol", fmt_short(c.prune_tol)},
      {"max-ell", std::to_string(c.max_ell)},
      {"t-grid", c.t_grid},
      {"bins", std::to_string(c.bins)},
      {"trim", c.trim ? "true" : "false"},
      {"k", std::to_string(c.k)},
      {"pd-terms", std::to_string(c.pd_terms)},
      {"fixed-point-tol", fmt_short(c.fixed_point_tol)},
      {"quadrature-tol", fmt_short(c.quadrature_tol)},
      {"out", c.out},
      {"jobs", std::to_string(c.jobs)},
  };
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim_ws(item);
    if (item.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') bad_value("t-grid", text);
    grid.push_back(v);
  }
  if (grid.empty()) bad_value("t-grid", text);
  return grid;
}

int default_jobs() {
  const char* env = std::getenv("LEVYSPEC_JOBS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1 || v > 1024) return 1;
  return static_cast<int>(v);
}

}  // namespace levyspec::cli
