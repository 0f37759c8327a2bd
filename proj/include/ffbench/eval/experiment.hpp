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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ffbench/datasets/image_dataset.hpp"
#include "ffbench/eval/features.hpp"
#include "ffbench/eval/report.hpp"
#include "ffbench/ff/checkpoint.hpp"
#include "ffbench/ff/goodness.hpp"
#include "ffbench/tasks/hybrid.hpp"
#include "ffbench/tasks/task.hpp"
#include "ffbench/trainer.hpp"

namespace ffb {

/// Everything that defines one pretrain → evaluate → probe run.
struct ExperimentConfig {
  std::string dataset = "mnist";
  std::vector<int> classes;     // empty: all classes
  std::size_t train_limit = 0;  // first n training samples; 0 keeps all
  std::size_t test_limit = 0;
  TaskKind task = TaskKind::classify;
  Trainer trainer = Trainer::ff;
  std::vector<std::size_t> widths{2000, 2000, 2000, 2000};
  GoodnessMode goodness_mode = GoodnessMode::mean_sq;
  double theta = kDefaultTheta;
  int epochs = 60;
  int probe_epochs = 100;
  std::size_t batch_size = 128;
  std::size_t probe_batch_size = 128;
  double learning_rate = kDefaultLearningRate;
  std::optional<double> probe_learning_rate;  // defaults to learning_rate
  std::uint64_t seed = 0;
  /// Layers for slow inference and probe features; empty selects the defaults.
  std::vector<std::size_t> layer_set;
  LabelMode probe_label_mode = LabelMode::none;
  bool probe_normalized = true;
  bool normalize_between = true;
  /// Online probe every n pretraining epochs (0 disables) with this many probe epochs.
  int curve_every = 0;
  int curve_probe_epochs = 10;
  MaskParams mask;
  std::string output_dir;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  double probe_lr() const { return probe_learning_rate.value_or(learning_rate); }
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ExperimentData {
  ImageDataset train;
  ImageDataset test;
  TaskSpec task;
};

/// Applies the class subset and sample limits of `cfg`.
ExperimentData prepare_experiment_data(const ExperimentConfig& cfg, ImageDataset train, ImageDataset test);
ExperimentData load_experiment_data(const ExperimentConfig& cfg, const std::filesystem::path& cache_dir);

/// Called after every pretraining epoch with that epoch's curve points (losses); may
/// append more, e.g. online probe results.
using PretrainHook = std::function<void(const FFNetwork& backbone, int epoch, std::vector<CurvePoint>& points)>;

struct PretrainResult {
  Checkpoint checkpoint;
  std::vector<CurvePoint> curves;
};

/// Initializes from seed.split(kInit) and trains with the configured trainer.
PretrainResult pretrain(const ExperimentConfig& cfg, const ExperimentData& data, const PretrainHook& hook = {});

/// Layers scanned by the slow method: the configured set, the last layer for
/// goodness_last, otherwise all but the first.
std::vector<std::size_t> slow_layers(const ExperimentConfig& cfg, std::size_t depth);
std::vector<std::size_t> transfer_layers(const ExperimentConfig& cfg, std::size_t depth);

struct PretextResult {
  std::optional<double> accuracy;
  std::string method;  // slow | head | probe | none
  std::vector<double> per_layer;
};

/// Pretext-task accuracy on the test split: slow method for goodness-trained networks,
/// head argmax for cross-entropy, a linear probe on task labels for unsupervised FF.
PretextResult evaluate_pretext(const ExperimentConfig& cfg, const Checkpoint& ckpt, const ExperimentData& data);

struct TransferResult {
  double test_accuracy = 0.0;
  double train_accuracy = 0.0;
  std::vector<std::size_t> layers;
};

/// Trains a linear probe on frozen features to predict the true classes.
TransferResult run_transfer_probe(const ExperimentConfig& cfg, const FFNetwork& backbone,
                                  const ExperimentData& data, int probe_epochs);

/// Hook that runs a short transfer probe every cfg.curve_every epochs.
PretrainHook online_probe_hook(const ExperimentConfig& cfg, const ExperimentData& data);

/// Full protocol in-process: pretrain, pretext evaluation, transfer probe.
EvalReport run_transfer_experiment(const ExperimentConfig& cfg, const ExperimentData& data,
                                   Checkpoint* trained = nullptr);

std::string default_run_id(const ExperimentConfig& cfg);

}  // namespace ffb
