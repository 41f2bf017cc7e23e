#include "cli/output.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "cli/config.hpp"

namespace levyspec::cli {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void check(lvs_status status) {
  switch (status) {
    case LVS_OK: return;
    case LVS_ERR_PRECONDITION: throw CliError(kExitPrecondition, lvs_last_error());
    case LVS_ERR_NUMERIC: throw CliError(kExitNumeric, lvs_last_error());
    default: throw CliError(1, lvs_last_error());
  }
}

Csv::Csv(const std::vector<std::string>& header) : header_(header) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

Csv& Csv::cell(const std::string& s) {
  if (row_open_) text_ += ',';
  text_ += s;
  row_open_ = true;
  return *this;
}
Csv& Csv::cell(double v) { return cell(fmt(v)); }
Csv& Csv::cell(std::int64_t v) { return cell(std::to_string(v)); }
Csv& Csv::cell(std::uint64_t v) { return cell(std::to_string(v)); }
void Csv::end_row() {
  text_ += '\n';
  row_open_ = false;
}

CsvRows& CsvRows::cell(const std::string& s) {
  if (row_open_) text_ += ',';
  text_ += s;
  row_open_ = true;
  return *this;
}
CsvRows& CsvRows::cell(double v) { return cell(fmt(v)); }
CsvRows& CsvRows::cell(std::int64_t v) { return cell(std::to_string(v)); }
CsvRows& CsvRows::cell(std::uint64_t v) { return cell(std::to_string(v)); }
void CsvRows::end_row() {
  text_ += '\n';
  row_open_ = false;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw CliError(kExitPrecondition, "cannot create output directory '" + dir + "': " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError(kExitPrecondition, "cannot write '" + path + "'");
  out << text;
  if (!out) throw CliError(kExitPrecondition, "write failed for '" + path + "'");
}

void add_file(nlohmann::ordered_json& manifest, const std::string& name, const Csv& csv) {
  std::int64_t rows = -1;
  for (char c : csv.text()) rows += c == '\n';
  manifest["files"].push_back({{"path", name}, {"columns", csv.header()}, {"rows", rows}});
}

void parallel_for(std::int64_t count, int jobs, const std::function<void(std::int64_t)>& fn) {
  const int workers = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(jobs, count)));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr first;
  std::int64_t first_index = count;
  const auto work = [&] {
    for (std::int64_t i = next++; i < count && !stop; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < first_index) {
          first_index = i;
          first = std::current_exception();
        }
        stop = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace levyspec::cli
