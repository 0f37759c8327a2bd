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

#include "ffbench/analysis/export.hpp"

#include <algorithm>

#include "ffbench/error.hpp"
#include "ffbench/eval/slow.hpp"

namespace ffb {

std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t cap, Rng& rng) {
  if (cap == 0) throw ArgumentError("sample cap must be positive");
  if (cap > n) {
    throw ArgumentError("sample cap " + std::to_string(cap) + " exceeds dataset size " + std::to_string(n));
  }
  auto perm = rng.permutation(n);
  perm.resize(cap);
  std::sort(perm.begin(), perm.end());
  return perm;
}

std::vector<double> min_max_normalize(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.0);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / range;
  return out;
}

ActivationExport export_activations(const FFNetwork& net, const ImageDataset& ds, std::span<const std::size_t> layers,
                                    const LabelPolicy& policy, std::size_t cap, Rng& rng) {
  validate_layer_set(layers, net.depth());
  ActivationExport out;
  out.indices = subsample_indices(ds.count(), cap, rng);
  const Tensor inputs = flat_batch(ds, out.indices);
  out.features = extract_features(net, inputs, layers, policy, true);
  for (auto i : out.indices) out.labels.push_back(ds.labels[i]);

  std::vector<double> raw(out.indices.size(), 0.0);
  std::size_t units = 0;
  for (auto l : layers) units += net.layers[l].fan_out();
  constexpr std::size_t kChunk = 1000;
  for (std::size_t start = 0; start < inputs.rows(); start += kChunk) {
    const std::size_t n = std::min(kChunk, inputs.rows() - start);
    std::vector<std::size_t> idx(n);
    for (std::size_t r = 0; r < n; ++r) idx[r] = start + r;
    const auto acts = ff_forward_all(net, apply_label_policy(gather_rows(inputs, idx), policy));
    for (std::size_t r = 0; r < n; ++r) {
      double sq = 0.0;
      for (auto l : layers) {
        for (double v : acts[l].row(r)) sq += v * v;
      }
      raw[start + r] = sq / static_cast<double>(units);
    }
  }
  out.activity = min_max_normalize(raw);
  return out;
}

}  // namespace ffb
