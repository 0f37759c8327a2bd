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

#include <span>
#include <vector>

#include "ffbench/core/rng.hpp"
#include "ffbench/core/tensor.hpp"
#include "ffbench/datasets/image_dataset.hpp"
#include "ffbench/tasks/task.hpp"

namespace ffb {

/// Flattened inputs [batch × flat_dim] with one task label per row.
struct LabeledBatch {
  Tensor inputs;
  std::vector<int> task_labels;
};

struct TaskBatch {
  LabeledBatch positive;
  LabeledBatch negative;
};

/// Copy of `img_flat` whose first num_labels entries (the head of channel 0 in
/// channel-major order) hold the one-hot code of `label`.
Tensor embed_label(const Tensor& img_flat, int label, int num_labels, int channels);
void embed_label_inplace(std::span<double> img_flat, int label, int num_labels);
/// Writes 1/num_labels into every label slot (the "neutral" label).
void embed_neutral_inplace(std::span<double> img_flat, int num_labels);

/// Uniform over the num_labels-1 labels different from true_label.
int make_negative_label(int true_label, int num_labels, Rng& rng);

/// Draws a task label per sample (the dataset label for classify) and applies its
/// transform; nothing is embedded.
LabeledBatch make_transformed_batch(const ImageDataset& ds, const TaskSpec& task,
                                    std::span<const std::size_t> indices, Rng& rng);

/// Positive rows carry the true task label, negative rows a random wrong one, both
/// embedded into the same transformed image.
TaskBatch make_task_batch(const ImageDataset& ds, const TaskSpec& task, std::span<const std::size_t> indices,
                          Rng& rng);

}  // namespace ffb
