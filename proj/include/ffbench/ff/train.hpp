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
#include <utility>
#include <vector>

#include "ffbench/core/rng.hpp"
#include "ffbench/core/tensor.hpp"
#include "ffbench/datasets/image_dataset.hpp"
#include "ffbench/ff/network.hpp"
#include "ffbench/tasks/hybrid.hpp"
#include "ffbench/tasks/task.hpp"

namespace ffb {

struct FFTrainConfig {
  int epochs = 60;
  std::size_t batch_size = 128;
  double learning_rate = kDefaultLearningRate;
  std::uint64_t seed = 0;

  void validate() const;
};

struct FFEpochLog {
  int epoch = 0;
  /// Mean pre-update loss of every layer over the epoch's batches.
  std::vector<double> layer_loss;
  /// Fraction of positive and negative rows each layer classifies on the right side of θ.
  std::vector<double> layer_separation;
};

struct FFTrainLog {
  std::vector<FFEpochLog> epochs;
};

/// Invoked after every epoch with the network as it stands.
using FFEpochCallback = std::function<void(const FFNetwork&, const FFEpochLog&)>;

/// Produces (positive, negative) input rows for a batch of sample indices.
using PairSource = std::function<std::pair<Tensor, Tensor>(std::span<const std::size_t>, Rng&)>;

/// Greedy layer-local training. For every batch each layer takes one Adam step on its own
/// loss, then its freshly updated output (normalized) feeds the next layer.
///
/// Randomness: shuffling uses seed.split(kShuffle), pair generation seed.split(kTask).
/// Throws TrainingError naming the layer and batch when a loss is not finite.
FFTrainLog train_ff_pairs(FFNetwork& net, std::size_t sample_count, const PairSource& source,
                          const FFTrainConfig& cfg, const FFEpochCallback& on_epoch = {});

/// Supervised or pretext-task training with label-embedded positives and negatives.
FFTrainLog train_ff(FFNetwork& net, const ImageDataset& ds, const TaskSpec& task, const FFTrainConfig& cfg,
                    const FFEpochCallback& on_epoch = {});

/// Label-free training: positives are images, negatives blurred-mask hybrids of two images.
/// A non-null `augment` applies random pretext transforms to both.
FFTrainLog train_ff_unsupervised(FFNetwork& net, const ImageDataset& ds, const FFTrainConfig& cfg,
                                 const MaskParams& mask = {}, const TaskSpec* augment = nullptr,
                                 const FFEpochCallback& on_epoch = {});

}  // namespace ffb
