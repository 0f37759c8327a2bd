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
#include <optional>
#include <string>
#include <vector>

namespace ffb {

/// One point of a per-epoch curve, e.g. {12, "test", "transfer_accuracy", 0.91}.
struct CurvePoint {
  int epoch = 0;
  std::string split;
  std::string metric;
  double value = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Results of one run. Accuracies are fractions in [0, 1].
struct EvalReport {
  std::string run_id;
  std::string dataset;
  std::string task;
  std::string trainer;
  /// Accuracy on the pretraining task over the test split.
  std::optional<double> pretext_accuracy;
  /// "slow", "head" or "probe".
  std::string pretext_method;
  /// Linear probe on frozen features predicting the true classes of the test split.
  std::optional<double> transfer_accuracy;
  std::optional<double> transfer_train_accuracy;
  std::vector<std::size_t> transfer_layers;
  std::vector<double> per_layer_accuracy;
  std::vector<CurvePoint> curves;

  /// Throws ValidationError for accuracies outside [0, 1].
  void validate() const;
  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);
void save_report(const EvalReport& report, const std::filesystem::path& path);
EvalReport load_report(const std::filesystem::path& path);

/// CSV with header epoch,split,metric,value.
std::string curves_to_csv(const std::vector<CurvePoint>& curves);
void save_curves_csv(const std::vector<CurvePoint>& curves, const std::filesystem::path& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace ffb
