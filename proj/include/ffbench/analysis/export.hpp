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
#include "ffbench/eval/features.hpp"
#include "ffbench/ff/network.hpp"

namespace ffb {

struct ActivationExport {
  std::vector<std::size_t> indices;  // dataset rows, ascending
  Tensor features;                   // extract_features rows
  std::vector<int> labels;
  /// Mean squared raw activation over the selected layers, min-max scaled to [0, 1]
  /// across the export; all zero when every sample has the same activity.
  std::vector<double> activity;
};

/// Deterministic subsample of `cap` rows (all rows when cap equals the dataset size).
/// Throws ArgumentError when cap exceeds the dataset size or is zero.
std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t cap, Rng& rng);

ActivationExport export_activations(const FFNetwork& net, const ImageDataset& ds, std::span<const std::size_t> layers,
                                    const LabelPolicy& policy, std::size_t cap, Rng& rng);

/// Min-max scaling to [0, 1]; a zero range maps every value to 0.
std::vector<double> min_max_normalize(std::span<const double> values);

}  // namespace ffb
