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

#include <array>
#include <cstddef>
#include <span>

#include "ffbench/core/tensor.hpp"
#include "ffbench/tasks/task.hpp"

namespace ffb {

struct ImageDims {
  std::size_t channels = 1;
  std::size_t height = 1;
  std::size_t width = 1;

  std::size_t plane() const { return height * width; }
  std::size_t size() const { return channels * height * width; }
};

enum class FlipMode { none, h, v, hv };

/// k·90° counterclockwise; k is taken modulo 4. Requires H == W.
Tensor apply_rotation(const Tensor& img, int k);
/// h mirrors columns, v mirrors rows.
Tensor apply_flip(const Tensor& img, FlipMode mode);
/// Rearranges the 2×2 patch grid (TL, TR, BL, BR) by the permutation of lexicographic rank
/// perm_index: output slot s receives input patch perm[s]. Requires even H and W.
Tensor apply_jigsaw(const Tensor& img, int perm_index);

/// Lexicographic-rank permutation of {0,1,2,3}; rank 0 is the identity.
std::array<int, 4> jigsaw_permutation(int perm_index);
int jigsaw_rank(const std::array<int, 4>& perm);
/// Rank of the inverse permutation.
int jigsaw_inverse_index(int perm_index);

/// The flip applied for a task label: flip_h uses {none, h}, flip_hv uses {none, h, v, hv}.
FlipMode flip_mode_for_label(TaskKind kind, int label);

/// Applies the transform a task associates with `label`; classify is the identity.
void apply_task_transform(TaskKind kind, int label, std::span<const double> src, std::span<double> dst,
                          const ImageDims& dims);
Tensor apply_task_transform(TaskKind kind, int label, const Tensor& img);

}  // namespace ffb
