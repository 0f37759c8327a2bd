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

#include <filesystem>
#include <string>
#include <vector>

namespace ffb {

/// One line of metrics.jsonl.
struct MetricsRecord {
  std::string run_id;
  std::string phase;
  int epoch = 0;
  std::string metric;
  double value = 0.0;
  std::string timestamp;  // UTC, ISO 8601

  friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

std::string metrics_to_json_line(const MetricsRecord& r);
MetricsRecord metrics_from_json_line(const std::string& line);

/// Append-only writer; every append opens, writes one line, and closes the file.
class MetricsLog {
 public:
  explicit MetricsLog(std::filesystem::path path) : path_(std::move(path)) {}
  void append(const MetricsRecord& r) const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::vector<MetricsRecord> read_metrics(const std::filesystem::path& path);

std::string utc_timestamp();

}  // namespace ffb
