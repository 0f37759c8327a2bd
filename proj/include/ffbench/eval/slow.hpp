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
#include <span>
#include <vector>

#include "ffbench/core/tensor.hpp"
#include "ffbench/datasets/image_dataset.hpp"
#include "ffbench/ff/network.hpp"
#include "ffbench/tasks/batch.hpp"
#include "ffbench/tasks/task.hpp"

namespace ffb {

// Layer indices are zero-based throughout.

/// Every layer but the first; {0} for a single-layer network.
std::vector<std::size_t> default_layer_set(std::size_t depth);
/// Throws ArgumentError unless `layers` is a nonempty, duplicate-free set of valid indices.
void validate_layer_set(std::span<const std::size_t> layers, std::size_t depth);

/// Index of the largest value; the lowest index wins ties.
int argmax_lowest(std::span<const double> values);

/// scores[k] is a [rows × num_labels] matrix holding the goodness of layer k when each
/// candidate label is embedded into the rows of `inputs`.
std::vector<Tensor> label_goodness_scores(const FFNetwork& net, const Tensor& inputs, int num_labels);
/// Averages the per-layer score matrices over `layers`.
Tensor average_scores(const std::vector<Tensor>& per_layer, std::span<const std::size_t> layers);

/// Slow method: embed every candidate label, average goodness over `layers`, take the argmax.
int predict_slow(const FFNetwork& net, std::span<const double> image_flat, int num_labels,
                 std::span<const std::size_t> layers);
std::vector<int> predict_slow_batch(const FFNetwork& net, const Tensor& inputs, int num_labels,
                                    std::span<const std::size_t> layers);

/// Test rows for a task: one transformed copy of every sample with a task label drawn from
/// seed.split(kEval). Classify keeps the dataset labels and leaves images untouched.
LabeledBatch make_eval_set(const ImageDataset& ds, const TaskSpec& task, std::uint64_t seed);

double accuracy(std::span<const int> predicted, std::span<const int> truth);
double slow_accuracy(const FFNetwork& net, const LabeledBatch& eval, int num_labels,
                     std::span<const std::size_t> layers);
/// Slow-method accuracy of every single layer.
std::vector<double> per_layer_accuracy(const FFNetwork& net, const LabeledBatch& eval, int num_labels);

}  // namespace ffb
