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

#include "ffbench/tasks/batch.hpp"

#include <algorithm>

#include "ffbench/error.hpp"
#include "ffbench/tasks/transforms.hpp"

namespace ffb {

void embed_label_inplace(std::span<double> img_flat, int label, int num_labels) {
  if (num_labels < 1 || static_cast<std::size_t>(num_labels) > img_flat.size()) {
    throw ArgumentError("embed_label: num_labels " + std::to_string(num_labels) + " does not fit the image");
  }
  if (label < 0 || label >= num_labels) {
    throw ArgumentError("embed_label: label " + std::to_string(label) + " outside [0, " +
                        std::to_string(num_labels) + ")");
  }
  std::fill_n(img_flat.begin(), num_labels, 0.0);
  img_flat[static_cast<std::size_t>(label)] = 1.0;
}

void embed_neutral_inplace(std::span<double> img_flat, int num_labels) {
  if (num_labels < 1 || static_cast<std::size_t>(num_labels) > img_flat.size()) {
    throw ArgumentError("embed_neutral: num_labels does not fit the image");
  }
  std::fill_n(img_flat.begin(), num_labels, 1.0 / num_labels);
}

Tensor embed_label(const Tensor& img_flat, int label, int num_labels, int channels) {
  if (channels < 1 || img_flat.size() % static_cast<std::size_t>(channels) != 0) {
    throw ArgumentError("embed_label: image size not divisible by channel count");
  }
  const std::size_t per_channel = img_flat.size() / static_cast<std::size_t>(channels);
  if (num_labels < 1 || static_cast<std::size_t>(num_labels) > per_channel) {
    throw ArgumentError("embed_label: " + std::to_string(num_labels) + " labels exceed " +
                        std::to_string(per_channel) + " pixels per channel");
  }
  Tensor out = img_flat;
  embed_label_inplace(out.values(), label, num_labels);
  return out;
}

int make_negative_label(int true_label, int num_labels, Rng& rng) {
  if (num_labels < 2) throw ArgumentError("make_negative_label: need at least 2 labels");
  if (true_label < 0 || true_label >= num_labels) throw ArgumentError("make_negative_label: bad true label");
  const auto r = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(num_labels - 1)));
  return r >= true_label ? r + 1 : r;
}

LabeledBatch make_transformed_batch(const ImageDataset& ds, const TaskSpec& task,
                                    std::span<const std::size_t> indices, Rng& rng) {
  if (indices.empty()) throw ArgumentError("empty batch");
  const ImageDims dims{ds.channels(), ds.height(), ds.width()};
  LabeledBatch out{Tensor({indices.size(), dims.size()}), std::vector<int>(indices.size())};
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= ds.count()) throw ArgumentError("sample index out of range");
    int label = 0;
    if (task.kind == TaskKind::classify) {
      label = ds.labels[indices[k]];
      if (label >= task.num_labels) throw ArgumentError("dataset label exceeds task label count");
    } else {
      label = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(task.num_labels)));
    }
    apply_task_transform(task.kind, label, ds.sample(indices[k]), out.inputs.row(k), dims);
    out.task_labels[k] = label;
  }
  return out;
}

TaskBatch make_task_batch(const ImageDataset& ds, const TaskSpec& task, std::span<const std::size_t> indices,
                          Rng& rng) {
  if (static_cast<std::size_t>(task.num_labels) > ds.height() * ds.width()) {
    throw ArgumentError("task has more labels than pixels in one channel");
  }
  TaskBatch out;
  out.positive = make_transformed_batch(ds, task, indices, rng);
  out.negative = out.positive;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const int label = out.positive.task_labels[k];
    const int wrong = make_negative_label(label, task.num_labels, rng);
    embed_label_inplace(out.positive.inputs.row(k), label, task.num_labels);
    embed_label_inplace(out.negative.inputs.row(k), wrong, task.num_labels);
    out.negative.task_labels[k] = wrong;
  }
  return out;
}

}  // namespace ffb
