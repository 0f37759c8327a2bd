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
#include <string>
#include <vector>

#include "ffbench/core/tensor.hpp"
#include "ffbench/ff/network.hpp"

namespace ffb {

enum class LabelMode { none, neutral, label };

std::string to_string(LabelMode mode);
LabelMode label_mode_from_string(const std::string& s);

/// What is written into the label slots before a feature forward pass.
struct LabelPolicy {
  LabelMode mode = LabelMode::none;
  int label = 0;       // for LabelMode::label
  int num_labels = 0;  // slot count for neutral/label

  void validate() const;
};

/// Applies the policy to a copy of `inputs`.
Tensor apply_label_policy(const Tensor& inputs, const LabelPolicy& policy);

std::size_t feature_dim(const FFNetwork& net, std::span<const std::size_t> layers);

/// Concatenates the activations of `layers` in layer order. With `normalized` every
/// per-layer segment is length-normalized (unit norm, or zero for a silent layer).
Tensor extract_features(const FFNetwork& net, const Tensor& inputs, std::span<const std::size_t> layers,
                        const LabelPolicy& policy = {}, bool normalized = true);

}  // namespace ffb
