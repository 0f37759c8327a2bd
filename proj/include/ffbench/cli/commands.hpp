/**
 * Copyright 2026 The ffbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ffb {

/// Exit codes of the ffbench tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRefused = 3;

struct GlobalOptions {
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::uint64_t> seed;
  bool force = false;
  int threads = 1;
  std::ostream* out = nullptr;  // defaults to std::cout
  std::ostream* err = nullptr;  // defaults to std::cerr
};

// Files of a run directory.
inline constexpr const char* kConfigFile = "config.json";
inline constexpr const char* kCheckpointFile = "checkpoint.ffck";
inline constexpr const char* kMetricsFile = "metrics.jsonl";
inline constexpr const char* kReportFile = "report.json";

int cmd_fetch(const GlobalOptions& opts, const std::string& dataset,
              const std::optional<std::filesystem::path>& manifest,
              const std::optional<std::filesystem::path>& from);
/// Writes config.json, checkpoint.ffck and metrics.jsonl; refuses to overwrite a run
/// without --force.
int cmd_train(const GlobalOptions& opts, const std::filesystem::path& config_path,
              const std::optional<std::filesystem::path>& run_dir_override);
/// Pretext accuracy, per-layer accuracies and training curves into report.json.
int cmd_evaluate(const GlobalOptions& opts, const std::filesystem::path& run_dir,
                 const std::optional<std::filesystem::path>& curves_csv);
/// Transfer probe into report.json.
int cmd_probe(const GlobalOptions& opts, const std::filesystem::path& run_dir);
int cmd_embed(const GlobalOptions& opts, const std::filesystem::path& config_path);
int cmd_report(const GlobalOptions& opts, const std::vector<std::filesystem::path>& run_dirs,
               const std::string& metric, const std::optional<std::filesystem::path>& csv_path);

/// Rows are "task / trainer", columns datasets, in first-seen order. Values are copied from
/// the reports unchanged.
struct ReportTable {
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::map<std::pair<std::string, std::string>, double> cells;
  std::vector<std::string> gaps;  // run dirs without a usable report
};

/// `metric` is "transfer" or "pretext".
ReportTable build_report_table(const std::vector<std::filesystem::path>& run_dirs, const std::string& metric);
/// Aligned text with percentages; empty cells print "-".
std::string format_report_text(const ReportTable& t);
/// CSV with the fractions exactly as stored.
std::string format_report_csv(const ReportTable& t);

}  // namespace ffb
