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

#include "ffbench/cli/metrics.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "ffbench/error.hpp"
#include "json.hpp"

namespace ffb {

using nlohmann::json;

std::string metrics_to_json_line(const MetricsRecord& r) {
  const json j = {{"run_id", r.run_id}, {"phase", r.phase},   {"epoch", r.epoch},
                  {"metric", r.metric}, {"value", r.value},   {"timestamp", r.timestamp}};
  return j.dump();
}

MetricsRecord metrics_from_json_line(const std::string& line) {
  try {
    const json j = json::parse(line);
    return MetricsRecord{j.at("run_id").get<std::string>(), j.at("phase").get<std::string>(),
                         j.at("epoch").get<int>(),          j.at("metric").get<std::string>(),
                         j.at("value").get<double>(),       j.at("timestamp").get<std::string>()};
  } catch (const json::exception& e) {
    throw FormatError(std::string("metrics line: ") + e.what());
  }
}

void MetricsLog::append(const MetricsRecord& r) const {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("cannot open " + path_.string() + " for appending");
  out << metrics_to_json_line(r) << '\n';
  if (!out) throw Error("write to " + path_.string() + " failed");
}

std::vector<MetricsRecord> read_metrics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<MetricsRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(metrics_from_json_line(line));
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03lldZ", buf, static_cast<long long>(ms));
  return out;
}

}  // namespace ffb
