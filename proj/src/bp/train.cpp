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

#include "ffbench/bp/train.hpp"

#include <algorithm>
#include <cmath>

#include "ffbench/error.hpp"
#include "ffbench/tasks/batch.hpp"

namespace ffb {

namespace {

bool gradients_finite(const BPGradients& g) {
  for (std::size_t i = 0; i < g.weights.size(); ++i) {
    if (!g.weights[i].all_finite() || !g.bias[i].all_finite()) return false;
  }
  return g.head_weights.all_finite() && g.head_bias.all_finite();
}

}  // namespace

BPTrainLog train_bp(BPNetwork& net, const ImageDataset& ds, const TaskSpec& task, const BPTrainConfig& cfg,
                    const BPEpochCallback& on_epoch) {
  cfg.validate();
  net.validate();
  if (net.backbone.input_dim() != ds.flat_dim()) throw ShapeError("network input does not match dataset images");
  if (ds.count() == 0) throw ArgumentError("no training samples");
  if (net.head && static_cast<int>(net.head->fan_out()) != task.num_labels) {
    throw ShapeError("head width does not match the task's label count");
  }
  net.set_learning_rate(cfg.learning_rate);

  const Rng master(cfg.seed);
  Rng shuffle_rng = master.split(streams::kShuffle);
  Rng task_rng = master.split(streams::kTask);
  const bool ce = net.loss == BPLoss::cross_entropy;
  const std::size_t n_samples = ds.count();

  BPTrainLog log;
  std::size_t batch_index = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto order = shuffle_rng.permutation(n_samples);
    double loss_sum = 0.0;
    std::size_t hits = 0, batches = 0;
    for (std::size_t start = 0; start < n_samples; start += cfg.batch_size, ++batch_index) {
      const std::size_t n = std::min(cfg.batch_size, n_samples - start);
      const auto idx = std::span<const std::size_t>(order).subspan(start, n);
      BPBatch batch;
      if (ce) {
        LabeledBatch b = make_transformed_batch(ds, task, idx, task_rng);
        batch.inputs = std::move(b.inputs);
        batch.labels = std::move(b.task_labels);
      } else {
        TaskBatch b = make_task_batch(ds, task, idx, task_rng);
        batch.inputs = std::move(b.positive.inputs);
        batch.labels = std::move(b.positive.task_labels);
        batch.negatives = std::move(b.negative.inputs);
      }
      const BPGradients g = bp_gradients(net, batch);
      const double loss = g.loss;
      if (!std::isfinite(loss) || !gradients_finite(g)) {
        throw TrainingError("non-finite loss or gradient at batch " + std::to_string(batch_index) + " (epoch " +
                            std::to_string(epoch + 1) + "); try a lower learning rate");
      }
      apply_bp_gradients(net, g);
      hits += g.correct;
      loss_sum += loss;
      ++batches;
    }
    if (!net.finite()) throw TrainingError("non-finite parameters after epoch " + std::to_string(epoch + 1));
    BPEpochLog entry;
    entry.epoch = epoch + 1;
    entry.loss = loss_sum / static_cast<double>(batches);
    entry.train_accuracy = static_cast<double>(hits) / static_cast<double>(ce ? n_samples : 2 * n_samples);
    log.epochs.push_back(entry);
    if (on_epoch) on_epoch(net, log.epochs.back());
  }
  return log;
}

}  // namespace ffb
