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

#include "ffbench/eval/report.hpp"

#include <charconv>

#include "ffbench/datasets/io.hpp"
#include "ffbench/error.hpp"
#include "json.hpp"

namespace ffb {

using nlohmann::json;

namespace {

void check_fraction(const char* field, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(std::string("report.") + field + " outside [0, 1]");
}

void put_optional(json& j, const char* key, const std::optional<double>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

std::optional<double> get_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::string read_text(const std::filesystem::path& path) {
  const Bytes b = read_file(path);
  return std::string(b.begin(), b.end());
}

void write_text(const std::filesystem::path& path, const std::string& s) {
  write_file(path, Bytes(s.begin(), s.end()));
}

}  // namespace

void EvalReport::validate() const {
  if (pretext_accuracy) check_fraction("pretext_accuracy", *pretext_accuracy);
  if (transfer_accuracy) check_fraction("transfer_accuracy", *transfer_accuracy);
  if (transfer_train_accuracy) check_fraction("transfer_train_accuracy", *transfer_train_accuracy);
  for (double v : per_layer_accuracy) check_fraction("per_layer_accuracy", v);
}

std::string report_to_json(const EvalReport& r) {
  r.validate();
  json j;
  j["run_id"] = r.run_id;
  j["dataset"] = r.dataset;
  j["task"] = r.task;
  j["trainer"] = r.trainer;
  put_optional(j, "pretext_accuracy", r.pretext_accuracy);
  j["pretext_method"] = r.pretext_method;
  put_optional(j, "transfer_accuracy", r.transfer_accuracy);
  put_optional(j, "transfer_train_accuracy", r.transfer_train_accuracy);
  j["transfer_layers"] = r.transfer_layers;
  j["per_layer_accuracy"] = r.per_layer_accuracy;
  json curves = json::array();
  for (const auto& p : r.curves) {
    curves.push_back({{"epoch", p.epoch}, {"split", p.split}, {"metric", p.metric}, {"value", p.value}});
  }
  j["curves"] = std::move(curves);
  return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    EvalReport r;
    r.run_id = j.value("run_id", "");
    r.dataset = j.value("dataset", "");
    r.task = j.value("task", "");
    r.trainer = j.value("trainer", "");
    r.pretext_accuracy = get_optional(j, "pretext_accuracy");
    r.pretext_method = j.value("pretext_method", "");
    r.transfer_accuracy = get_optional(j, "transfer_accuracy");
    r.transfer_train_accuracy = get_optional(j, "transfer_train_accuracy");
    r.transfer_layers = j.value("transfer_layers", std::vector<std::size_t>{});
    r.per_layer_accuracy = j.value("per_layer_accuracy", std::vector<double>{});
    if (j.contains("curves")) {
      for (const auto& p : j.at("curves")) {
        r.curves.push_back({p.at("epoch").get<int>(), p.at("split").get<std::string>(),
                            p.at("metric").get<std::string>(), p.at("value").get<double>()});
      }
    }
    r.validate();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("report: ") + e.what());
  }
}

void save_report(const EvalReport& report, const std::filesystem::path& path) {
  write_text(path, report_to_json(report));
}

EvalReport load_report(const std::filesystem::path& path) { return report_from_json(read_text(path)); }

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string curves_to_csv(const std::vector<CurvePoint>& curves) {
  std::string out = "epoch,split,metric,value\n";
  for (const auto& p : curves) {
    out += std::to_string(p.epoch) + "," + p.split + "," + p.metric + "," + format_double(p.value) + "\n";
  }
  return out;
}

void save_curves_csv(const std::vector<CurvePoint>& curves, const std::filesystem::path& path) {
  write_text(path, curves_to_csv(curves));
}

}  // namespace ffb
