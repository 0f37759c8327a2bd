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
#include <functional>
#include <span>
#include <vector>

#include "ffbench/core/tensor.hpp"
#include "ffbench/ff/layer.hpp"

namespace ffb {

struct ProbeConfig {
  int epochs = 100;
  std::size_t batch_size = 128;
  double learning_rate = kDefaultLearningRate;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Softmax classifier on frozen features; zero-initialized.
struct LinearProbe {
  DenseLayer linear;  // [feature_dim × num_classes], applied without ReLU

  std::size_t feature_dim() const { return linear.fan_in(); }
  int num_classes() const { return static_cast<int>(linear.fan_out()); }
};

struct ProbeEpochLog {
  int epoch = 0;
  double loss = 0.0;
  double train_accuracy = 0.0;
};

using ProbeEpochCallback = std::function<void(const LinearProbe&, const ProbeEpochLog&)>;

/// Adam on mean cross-entropy, mini-batches shuffled by seed.split(kProbe).
/// Throws ArgumentError when fewer than two distinct labels are present.
LinearProbe train_linear_probe(const Tensor& features, std::span<const int> labels, int num_classes,
                               const ProbeConfig& cfg, const ProbeEpochCallback& on_epoch = {});

Tensor probe_logits(const LinearProbe& probe, const Tensor& features);
std::vector<int> probe_predict(const LinearProbe& probe, const Tensor& features);

struct AccuracyCounts {
  std::vector<std::size_t> correct_per_class;
  std::vector<std::size_t> total_per_class;
  std::size_t correct = 0;
  std::size_t total = 0;

  double accuracy() const { return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total); }
};

AccuracyCounts accuracy_counts(std::span<const int> predicted, std::span<const int> truth, int num_classes);

}  // namespace ffb
