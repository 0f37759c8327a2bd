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

#include <functional>
#include <vector>

#include "ffbench/bp/network.hpp"
#include "ffbench/datasets/image_dataset.hpp"
#include "ffbench/ff/train.hpp"
#include "ffbench/tasks/task.hpp"

namespace ffb {

using BPTrainConfig = FFTrainConfig;

struct BPEpochLog {
  int epoch = 0;
  double loss = 0.0;
  /// Head argmax accuracy for cross-entropy; share of rows on the correct side of θ in the
  /// last layer for the goodness variants. Measured before each step.
  double train_accuracy = 0.0;
};

struct BPTrainLog {
  std::vector<BPEpochLog> epochs;
};

using BPEpochCallback = std::function<void(const BPNetwork&, const BPEpochLog&)>;

/// End-to-end training with the same seed streams as train_ff. Cross-entropy reads
/// label-free transformed images with their task labels; the goodness variants read the
/// label-embedded positive/negative batches used by forward-forward.
BPTrainLog train_bp(BPNetwork& net, const ImageDataset& ds, const TaskSpec& task, const BPTrainConfig& cfg,
                    const BPEpochCallback& on_epoch = {});

}  // namespace ffb
