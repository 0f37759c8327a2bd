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

#include "ffbench/eval/features.hpp"

#include <algorithm>
#include <numeric>

#include "ffbench/core/linalg.hpp"
#include "ffbench/error.hpp"
#include "ffbench/eval/slow.hpp"
#include "ffbench/tasks/batch.hpp"

namespace ffb {

std::string to_string(LabelMode mode) {
  switch (mode) {
    case LabelMode::none: return "none";
    case LabelMode::neutral: return "neutral";
    case LabelMode::label: return "label";
  }
  return "?";
}

LabelMode label_mode_from_string(const std::string& s) {
  if (s == "none") return LabelMode::none;
  if (s == "neutral") return LabelMode::neutral;
  if (s == "label") return LabelMode::label;
  throw ArgumentError("unknown label mode '" + s + "'");
}

void LabelPolicy::validate() const {
  if (mode == LabelMode::none) return;
  if (num_labels < 1) throw ArgumentError("label policy needs num_labels");
  if (mode == LabelMode::label && (label < 0 || label >= num_labels)) {
    throw ArgumentError("label " + std::to_string(label) + " outside [0, " + std::to_string(num_labels) + ")");
  }
}

Tensor apply_label_policy(const Tensor& inputs, const LabelPolicy& policy) {
  policy.validate();
  Tensor x = inputs;
  if (policy.mode == LabelMode::none) return x;
  if (static_cast<std::size_t>(policy.num_labels) > x.cols()) throw ShapeError("more label slots than inputs");
  for (std::size_t r = 0; r < x.rows(); ++r) {
    if (policy.mode == LabelMode::neutral) {
      embed_neutral_inplace(x.row(r), policy.num_labels);
    } else {
      embed_label_inplace(x.row(r), policy.label, policy.num_labels);
    }
  }
  return x;
}

std::size_t feature_dim(const FFNetwork& net, std::span<const std::size_t> layers) {
  validate_layer_set(layers, net.depth());
  std::size_t d = 0;
  for (auto l : layers) d += net.layers[l].fan_out();
  return d;
}

Tensor extract_features(const FFNetwork& net, const Tensor& inputs, std::span<const std::size_t> layers,
                        const LabelPolicy& policy, bool normalized) {
  const std::size_t dim = feature_dim(net, layers);
  const std::size_t rows = inputs.rows();
  Tensor out({rows, dim});
  constexpr std::size_t kChunk = 1000;
  for (std::size_t start = 0; start < rows; start += kChunk) {
    const std::size_t n = std::min(kChunk, rows - start);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), start);
    const auto acts = ff_forward_all(net, apply_label_policy(gather_rows(inputs, idx), policy));
    for (std::size_t r = 0; r < n; ++r) {
      auto dst = out.row(start + r);
      std::size_t offset = 0;
      for (auto l : layers) {
        auto src = acts[l].row(r);
        auto seg = dst.subspan(offset, src.size());
        std::copy(src.begin(), src.end(), seg.begin());
        if (normalized) l2_normalize_inplace(seg);
        offset += src.size();
      }
    }
  }
  return out;
}

}  // namespace ffb
