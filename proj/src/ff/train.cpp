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

#include "ffbench/ff/train.hpp"

#include <cmath>

#include "ffbench/error.hpp"
#include "ffbench/tasks/batch.hpp"

namespace ffb {

void FFTrainConfig::validate() const {
  if (epochs < 0) throw ArgumentError("epochs must be non-negative");
  if (batch_size < 1) throw ArgumentError("batch_size must be at least 1");
  if (!(learning_rate > 0.0)) throw ArgumentError("learning_rate must be positive");
}

FFTrainLog train_ff_pairs(FFNetwork& net, std::size_t sample_count, const PairSource& source,
                          const FFTrainConfig& cfg, const FFEpochCallback& on_epoch) {
  cfg.validate();
  net.validate();
  if (sample_count == 0) throw ArgumentError("no training samples");
  net.set_learning_rate(cfg.learning_rate);

  const Rng master(cfg.seed);
  Rng shuffle_rng = master.split(streams::kShuffle);
  Rng pair_rng = master.split(streams::kTask);
  const std::size_t depth = net.depth();

  FFTrainLog log;
  std::size_t batch_index = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto order = shuffle_rng.permutation(sample_count);
    FFEpochLog entry;
    entry.epoch = epoch + 1;
    entry.layer_loss.assign(depth, 0.0);
    entry.layer_separation.assign(depth, 0.0);
    std::size_t batches = 0;
    std::size_t rows = 0;

    for (std::size_t start = 0; start < sample_count; start += cfg.batch_size, ++batch_index) {
      const std::size_t n = std::min(cfg.batch_size, sample_count - start);
      auto [x_pos, x_neg] = source(std::span<const std::size_t>(order).subspan(start, n), pair_rng);
      for (std::size_t i = 0; i < depth; ++i) {
        DenseLayer& layer = net.layers[i];
        LayerGradients g = layer_local_gradients(layer, x_pos, x_neg, net.theta, net.mode);
        if (!std::isfinite(g.loss) || !g.weights.all_finite() || !g.bias.all_finite()) {
          throw TrainingError("non-finite loss or gradient in layer " + std::to_string(i) + " at batch " +
                              std::to_string(batch_index) + " (epoch " + std::to_string(epoch + 1) +
                              "); try a lower learning rate");
        }
        apply_gradients(layer, g.weights, g.bias);
        entry.layer_loss[i] += g.loss;
        entry.layer_separation[i] += static_cast<double>(g.positive_hits + g.negative_hits);
        if (i + 1 < depth) {
          x_pos = next_layer_input(net, layer_forward(layer, x_pos));
          x_neg = next_layer_input(net, layer_forward(layer, x_neg));
        }
      }
      ++batches;
      rows += n;
    }
    for (std::size_t i = 0; i < depth; ++i) {
      entry.layer_loss[i] /= static_cast<double>(batches);
      entry.layer_separation[i] /= static_cast<double>(2 * rows);
    }
    if (!net.finite()) throw TrainingError("non-finite parameters after epoch " + std::to_string(epoch + 1));
    log.epochs.push_back(entry);
    if (on_epoch) on_epoch(net, log.epochs.back());
  }
  return log;
}

FFTrainLog train_ff(FFNetwork& net, const ImageDataset& ds, const TaskSpec& task, const FFTrainConfig& cfg,
                    const FFEpochCallback& on_epoch) {
  if (net.input_dim() != ds.flat_dim()) throw ShapeError("network input does not match dataset images");
  if (task.kind == TaskKind::classify && task.num_labels != ds.num_classes) {
    throw ArgumentError("classify task label count differs from dataset classes");
  }
  PairSource source = [&](std::span<const std::size_t> idx, Rng& rng) {
    TaskBatch b = make_task_batch(ds, task, idx, rng);
    return std::make_pair(std::move(b.positive.inputs), std::move(b.negative.inputs));
  };
  return train_ff_pairs(net, ds.count(), source, cfg, on_epoch);
}

FFTrainLog train_ff_unsupervised(FFNetwork& net, const ImageDataset& ds, const FFTrainConfig& cfg,
                                 const MaskParams& mask, const TaskSpec* augment, const FFEpochCallback& on_epoch) {
  if (net.input_dim() != ds.flat_dim()) throw ShapeError("network input does not match dataset images");
  PairSource source = [&](std::span<const std::size_t> idx, Rng& rng) {
    HybridBatch b = make_hybrid_batch(ds, idx, rng, mask, augment);
    return std::make_pair(std::move(b.positive.inputs), std::move(b.negative));
  };
  return train_ff_pairs(net, ds.count(), source, cfg, on_epoch);
}

}  // namespace ffb
