#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "levyspec/levyspec.h"

namespace levyspec::cli {

inline constexpr int kSchemaVersion = 1;

// %.17g round-trips every double.
std::string fmt(double v);
// Shortest text that parses back to v; used for configuration values.
std::string fmt_short(double v);

// Turns a non-OK status into a CliError carrying lvs_last_error().
void check(lvs_status status);

// Builds CSV text; cells are joined with ',' and rows end with '\n'.
class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header);
  Csv& cell(const std::string& s);
  Csv& cell(double v);
  Csv& cell(std::int64_t v);
  Csv& cell(std::uint64_t v);
  Csv& cell(int v) { return cell(static_cast<std::int64_t>(v)); }
  void end_row();
  void append(const std::string& rows) { text_ += rows; }
  const std::string& text() const { return text_; }
  const std::vector<std::string>& header() const { return header_; }

 private:
  std::vector<std::string> header_;
  std::string text_;
  bool row_open_ = false;
};

// Row text for one replication, without the header.
class CsvRows {
 public:
  CsvRows& cell(const std::string& s);
  CsvRows& cell(double v);
  CsvRows& cell(std::int64_t v);
  CsvRows& cell(std::uint64_t v);
  CsvRows& cell(int v) { return cell(static_cast<std::int64_t>(v)); }
  void end_row();
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  bool row_open_ = false;
};

void ensure_directory(const std::string& dir);
std::string join_path(const std::string& dir, const std::string& name);
void write_text(const std::string& path, const std::string& text);

// Records a written CSV in the manifest's "files" list.
void add_file(nlohmann::ordered_json& manifest, const std::string& name, const Csv& csv);

// Runs fn(i) for i in [0, count) on `jobs` threads. The first exception
// (lowest index wins among those observed) is rethrown after all workers stop.
void parallel_for(std::int64_t count, int jobs, const std::function<void(std::int64_t)>& fn);

}  // namespace levyspec::cli
