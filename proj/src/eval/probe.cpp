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

#include "ffbench/eval/probe.hpp"

#include <algorithm>
#include <set>

#include "ffbench/bp/network.hpp"
#include "ffbench/core/linalg.hpp"
#include "ffbench/core/rng.hpp"
#include "ffbench/eval/slow.hpp"
#include "ffbench/error.hpp"

namespace ffb {

void ProbeConfig::validate() const {
  if (epochs < 0) throw ArgumentError("probe epochs must be non-negative");
  if (batch_size < 1) throw ArgumentError("probe batch_size must be at least 1");
  if (!(learning_rate > 0.0)) throw ArgumentError("probe learning_rate must be positive");
}

Tensor probe_logits(const LinearProbe& probe, const Tensor& features) {
  if (features.rank() != 2 || features.cols() != probe.feature_dim()) {
    throw ShapeError("features " + shape_string(features.shape()) + " do not match probe input " +
                     std::to_string(probe.feature_dim()));
  }
  return layer_preactivation(probe.linear, features);
}

std::vector<int> probe_predict(const LinearProbe& probe, const Tensor& features) {
  const Tensor logits = probe_logits(probe, features);
  std::vector<int> out(logits.rows());
  for (std::size_t r = 0; r < logits.rows(); ++r) out[r] = argmax_lowest(logits.row(r));
  return out;
}

LinearProbe train_linear_probe(const Tensor& features, std::span<const int> labels, int num_classes,
                               const ProbeConfig& cfg, const ProbeEpochCallback& on_epoch) {
  cfg.validate();
  if (features.rank() != 2) throw ShapeError("features must be a matrix");
  if (features.rows() != labels.size()) throw ShapeError("feature and label counts differ");
  if (num_classes < 2) throw ArgumentError("probe needs at least two classes");
  for (int y : labels) {
    if (y < 0 || y >= num_classes) throw ArgumentError("label " + std::to_string(y) + " out of range");
  }
  if (std::set<int>(labels.begin(), labels.end()).size() < 2) {
    throw ArgumentError("probe labels are degenerate: a single class");
  }

  const std::size_t dim = features.cols();
  const auto classes = static_cast<std::size_t>(num_classes);
  LinearProbe probe{make_dense_layer(Tensor({dim, classes}), Tensor({classes}), cfg.learning_rate)};
  Rng shuffle = Rng(cfg.seed).split(streams::kProbe);
  const std::size_t n = labels.size();

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto order = shuffle.permutation(n);
    double loss_sum = 0.0;
    std::size_t hits = 0, batches = 0;
    for (std::size_t start = 0; start < n; start += cfg.batch_size) {
      const auto idx = std::span<const std::size_t>(order).subspan(start, std::min(cfg.batch_size, n - start));
      const Tensor x = gather_rows(features, idx);
      std::vector<int> y(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) y[i] = labels[idx[i]];
      const Tensor logits = layer_preactivation(probe.linear, x);
      loss_sum += cross_entropy(logits, y);
      Tensor d = softmax_rows(logits);
      const double inv_b = 1.0 / static_cast<double>(idx.size());
      for (std::size_t r = 0; r < d.rows(); ++r) {
        hits += argmax_lowest(logits.row(r)) == y[r] ? 1 : 0;
        auto row = d.row(r);
        row[static_cast<std::size_t>(y[r])] -= 1.0;
        for (auto& v : row) v *= inv_b;
      }
      apply_gradients(probe.linear, matmul_tn(x, d), column_sums(d));
      ++batches;
    }
    if (on_epoch) {
      on_epoch(probe, ProbeEpochLog{epoch + 1, loss_sum / static_cast<double>(batches),
                                    static_cast<double>(hits) / static_cast<double>(n)});
    }
  }
  return probe;
}

AccuracyCounts accuracy_counts(std::span<const int> predicted, std::span<const int> truth, int num_classes) {
  if (predicted.size() != truth.size()) throw ShapeError("prediction and label counts differ");
  AccuracyCounts c;
  c.correct_per_class.assign(static_cast<std::size_t>(num_classes), 0);
  c.total_per_class.assign(static_cast<std::size_t>(num_classes), 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int y = truth[i];
    if (y < 0 || y >= num_classes) throw ArgumentError("label " + std::to_string(y) + " out of range");
    const auto k = static_cast<std::size_t>(y);
    ++c.total_per_class[k];
    ++c.total;
    if (predicted[i] == y) {
      ++c.correct_per_class[k];
      ++c.correct;
    }
  }
  return c;
}

}  // namespace ffb
