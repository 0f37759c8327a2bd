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

#include "ffbench/eval/slow.hpp"

#include <algorithm>
#include <numeric>

#include "ffbench/error.hpp"

namespace ffb {

namespace {

constexpr std::size_t kChunk = 1000;

template <typename Fn>
void for_chunks(std::size_t rows, Fn&& fn) {
  for (std::size_t start = 0; start < rows; start += kChunk) fn(start, std::min(kChunk, rows - start));
}

Tensor row_range(const Tensor& m, std::size_t start, std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), start);
  return gather_rows(m, idx);
}

}  // namespace

std::vector<std::size_t> default_layer_set(std::size_t depth) {
  if (depth == 0) throw ArgumentError("network has no layers");
  if (depth == 1) return {0};
  std::vector<std::size_t> out(depth - 1);
  std::iota(out.begin(), out.end(), std::size_t{1});
  return out;
}

void validate_layer_set(std::span<const std::size_t> layers, std::size_t depth) {
  if (layers.empty()) throw ArgumentError("layer set is empty");
  std::vector<bool> seen(depth, false);
  for (auto l : layers) {
    if (l >= depth) {
      throw ArgumentError("layer index " + std::to_string(l) + " out of range for depth " + std::to_string(depth));
    }
    if (seen[l]) throw ArgumentError("layer index " + std::to_string(l) + " listed twice");
    seen[l] = true;
  }
}

int argmax_lowest(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("argmax of an empty list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return static_cast<int>(best);
}

std::vector<Tensor> label_goodness_scores(const FFNetwork& net, const Tensor& inputs, int num_labels) {
  if (num_labels < 1) throw ArgumentError("num_labels must be positive");
  if (inputs.rank() != 2 || inputs.cols() != net.input_dim()) throw ShapeError("inputs do not match the network");
  const std::size_t rows = inputs.rows();
  std::vector<Tensor> scores(net.depth(), Tensor({rows, static_cast<std::size_t>(num_labels)}));
  for (int label = 0; label < num_labels; ++label) {
    Tensor x = inputs;
    for (std::size_t r = 0; r < rows; ++r) embed_label_inplace(x.row(r), label, num_labels);
    const auto acts = ff_forward_all(net, x);
    for (std::size_t k = 0; k < acts.size(); ++k) {
      const auto g = row_goodness(acts[k], net.mode);
      for (std::size_t r = 0; r < rows; ++r) scores[k].at(r, static_cast<std::size_t>(label)) = g[r];
    }
  }
  return scores;
}

Tensor average_scores(const std::vector<Tensor>& per_layer, std::span<const std::size_t> layers) {
  validate_layer_set(layers, per_layer.size());
  Tensor out(per_layer[layers[0]].shape());
  for (auto l : layers) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += per_layer[l][i];
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= static_cast<double>(layers.size());
  return out;
}

int predict_slow(const FFNetwork& net, std::span<const double> image_flat, int num_labels,
                 std::span<const std::size_t> layers) {
  Tensor x({1, image_flat.size()}, std::vector<double>(image_flat.begin(), image_flat.end()));
  return predict_slow_batch(net, x, num_labels, layers).front();
}

std::vector<int> predict_slow_batch(const FFNetwork& net, const Tensor& inputs, int num_labels,
                                    std::span<const std::size_t> layers) {
  validate_layer_set(layers, net.depth());
  std::vector<int> out;
  out.reserve(inputs.rows());
  for_chunks(inputs.rows(), [&](std::size_t start, std::size_t n) {
    const Tensor avg = average_scores(label_goodness_scores(net, row_range(inputs, start, n), num_labels), layers);
    for (std::size_t r = 0; r < n; ++r) out.push_back(argmax_lowest(avg.row(r)));
  });
  return out;
}

LabeledBatch make_eval_set(const ImageDataset& ds, const TaskSpec& task, std::uint64_t seed) {
  std::vector<std::size_t> idx(ds.count());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng = Rng(seed).split(streams::kEval);
  return make_transformed_batch(ds, task, idx, rng);
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw ShapeError("prediction and label counts differ");
  if (truth.empty()) throw ArgumentError("accuracy of an empty set");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double slow_accuracy(const FFNetwork& net, const LabeledBatch& eval, int num_labels,
                     std::span<const std::size_t> layers) {
  return accuracy(predict_slow_batch(net, eval.inputs, num_labels, layers), eval.task_labels);
}

std::vector<double> per_layer_accuracy(const FFNetwork& net, const LabeledBatch& eval, int num_labels) {
  const std::size_t depth = net.depth();
  std::vector<std::size_t> hits(depth, 0);
  for_chunks(eval.inputs.rows(), [&](std::size_t start, std::size_t n) {
    const auto scores = label_goodness_scores(net, row_range(eval.inputs, start, n), num_labels);
    for (std::size_t k = 0; k < depth; ++k) {
      for (std::size_t r = 0; r < n; ++r) hits[k] += argmax_lowest(scores[k].row(r)) == eval.task_labels[start + r];
    }
  });
  std::vector<double> out(depth);
  for (std::size_t k = 0; k < depth; ++k) out[k] = static_cast<double>(hits[k]) / static_cast<double>(eval.inputs.rows());
  return out;
}

}  // namespace ffb
