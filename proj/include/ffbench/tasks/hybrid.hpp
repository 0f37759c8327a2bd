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

#include "ffbench/core/rng.hpp"
#include "ffbench/core/tensor.hpp"
#include "ffbench/datasets/image_dataset.hpp"
#include "ffbench/tasks/batch.hpp"
#include "ffbench/tasks/task.hpp"

namespace ffb {

/// Binary [H×W] mask used to splice two images into a negative sample.
struct HybridMask {
  Tensor mask;
};

struct MaskParams {
  int repetitions = 8;
  double threshold = 0.5;

  friend bool operator==(const MaskParams&, const MaskParams&) = default;
};

/// Random bit image blurred `repetitions` times with [1/4, 1/2, 1/4] (horizontal then
/// vertical, edge-replicated) and thresholded. Requires h, w >= 4.
HybridMask generate_blur_mask(std::size_t h, std::size_t w, Rng& rng, const MaskParams& params = {});

/// mask·a + (1−mask)·b for [C×H×W] images; the mask is shared by all channels.
Tensor make_hybrid(const Tensor& img_a, const Tensor& img_b, const HybridMask& mask);

/// Positives are dataset images; negatives are hybrids of each image with a random partner.
///
/// With `augment` set to a pretext task, both images are transformed by independently drawn
/// task labels first and the positives' labels record the transform; otherwise positives
/// carry the dataset labels.
struct HybridBatch {
  LabeledBatch positive;
  Tensor negative;
};

HybridBatch make_hybrid_batch(const ImageDataset& ds, std::span<const std::size_t> indices, Rng& rng,
                              const MaskParams& params = {}, const TaskSpec* augment = nullptr);

}  // namespace ffb
