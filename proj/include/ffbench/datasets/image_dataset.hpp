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
#include <span>
#include <string>
#include <vector>

#include "ffbench/core/tensor.hpp"

namespace ffb {

enum class Split { train, test };

std::string to_string(Split split);
Split split_from_string(const std::string& s);

/// One split of one dataset. Images are [count × channels × height × width] in [0,1].
struct ImageDataset {
  Tensor images;
  std::vector<int> labels;
  int num_classes = 0;
  std::string name;
  Split split = Split::train;

  std::size_t count() const { return labels.size(); }
  std::size_t channels() const { return images.dim(1); }
  std::size_t height() const { return images.dim(2); }
  std::size_t width() const { return images.dim(3); }
  /// channels × height × width; the MLP input width.
  std::size_t flat_dim() const { return channels() * height() * width(); }

  /// Channel-major flattened view of sample i.
  std::span<const double> sample(std::size_t i) const;
  /// Sample i as a [C×H×W] tensor.
  Tensor image(std::size_t i) const;

  /// Throws ValidationError on any broken invariant.
  void validate() const;
};

/// Keeps only the listed classes, relabelled 0..k-1 in list order; sample order is preserved.
ImageDataset make_subset(const ImageDataset& ds, const std::vector<int>& classes);

/// First n samples (n clipped to the dataset size).
ImageDataset take_first(const ImageDataset& ds, std::size_t n);

/// Gathers the flattened samples at `indices` into a [n × flat_dim] matrix.
Tensor flat_batch(const ImageDataset& ds, std::span<const std::size_t> indices);

/// FNV-1a over the raw bytes of sample i, for copy-integrity checks.
std::uint64_t sample_hash(const ImageDataset& ds, std::size_t i);

}  // namespace ffb
