#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramlab/manifest.hpp"

namespace ramlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "ramlab-report/1";

struct RunOptions {
  unsigned parallel = 1;                      // sweep slice parallelism
  std::optional<std::uint64_t> seed;          // randomized A-S reduction order for swan tasks
  std::optional<int> precision_guard;
};

struct CsvTable {
  std::string name;     // file stem
  std::string content;
};

struct TaskResult {
  std::size_t index = 0;  // 1-based position in the manifest
  std::string kind;
  bool ok = true;
  std::string error_code;
  std::string error;
  Json data = Json::object();       // numbers as decimal strings
  std::vector<std::string> lines;   // human-readable summary
  std::vector<CsvTable> csv;
  double seconds = 0;
};

struct RunReport {
  std::uint32_t p = 0;
  std::vector<TaskResult> tasks;
  bool any_error() const;
};

RunReport run_manifest(const Manifest& m, const RunOptions& options = {});
TaskResult run_task(const Manifest& m, const TaskDecl& task, std::size_t index, const RunOptions& options = {});

// Byte-stable for identical inputs: timings are left out.
std::string report_json(const RunReport& r);
std::string report_text(const RunReport& r);

enum class OutputFormat { Text, Json, Csv, All };
OutputFormat parse_format(const std::string& s);
// Writes report.txt / report.json / <task>.csv into dir; returns the files written.
std::vector<std::string> write_report(const RunReport& r, const std::string& dir, OutputFormat format);

// Cell order of sweep CSVs: one row per (N, slice, fiber); slices in table
// order (specialized values, then generic), fibers special before generic.
std::string sweep_csv_header();

}  // namespace ramlab
