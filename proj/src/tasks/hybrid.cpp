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

#include "ffbench/tasks/hybrid.hpp"

#include <algorithm>
#include <vector>

#include "ffbench/error.hpp"
#include "ffbench/tasks/transforms.hpp"

namespace ffb {

namespace {

void blur_rows(const std::vector<double>& in, std::vector<double>& out, std::size_t h, std::size_t w) {
  for (std::size_t i = 0; i < h; ++i) {
    const double* r = in.data() + i * w;
    for (std::size_t j = 0; j < w; ++j) {
      const double left = r[j == 0 ? 0 : j - 1];
      const double right = r[j + 1 == w ? j : j + 1];
      out[i * w + j] = 0.25 * left + 0.5 * r[j] + 0.25 * right;
    }
  }
}

void blur_cols(const std::vector<double>& in, std::vector<double>& out, std::size_t h, std::size_t w) {
  for (std::size_t i = 0; i < h; ++i) {
    const std::size_t up = i == 0 ? 0 : i - 1;
    const std::size_t down = i + 1 == h ? i : i + 1;
    for (std::size_t j = 0; j < w; ++j) {
      out[i * w + j] = 0.25 * in[up * w + j] + 0.5 * in[i * w + j] + 0.25 * in[down * w + j];
    }
  }
}

}  // namespace

HybridMask generate_blur_mask(std::size_t h, std::size_t w, Rng& rng, const MaskParams& params) {
  if (h < 4 || w < 4) throw ArgumentError("generate_blur_mask: mask must be at least 4×4");
  if (params.repetitions < 0) throw ArgumentError("generate_blur_mask: negative repetitions");
  std::vector<double> a(h * w), b(h * w);
  for (auto& v : a) v = static_cast<double>(rng.next_u64() >> 63);
  for (int r = 0; r < params.repetitions; ++r) {
    blur_rows(a, b, h, w);
    blur_cols(b, a, h, w);
  }
  for (auto& v : a) v = v > params.threshold ? 1.0 : 0.0;
  return {Tensor({h, w}, std::move(a))};
}

Tensor make_hybrid(const Tensor& img_a, const Tensor& img_b, const HybridMask& mask) {
  if (img_a.shape() != img_b.shape() || img_a.rank() != 3) {
    throw ShapeError("make_hybrid: images " + shape_string(img_a.shape()) + " and " +
                     shape_string(img_b.shape()) + " differ");
  }
  if (mask.mask.rank() != 2 || mask.mask.dim(0) != img_a.dim(1) || mask.mask.dim(1) != img_a.dim(2)) {
    throw ShapeError("make_hybrid: mask " + shape_string(mask.mask.shape()) + " does not match image " +
                     shape_string(img_a.shape()));
  }
  Tensor out(img_a.shape());
  const std::size_t plane = mask.mask.size();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double m = mask.mask[i % plane];
    out[i] = m * img_a[i] + (1.0 - m) * img_b[i];
  }
  return out;
}

HybridBatch make_hybrid_batch(const ImageDataset& ds, std::span<const std::size_t> indices, Rng& rng,
                              const MaskParams& params, const TaskSpec* augment) {
  if (indices.empty()) throw ArgumentError("empty batch");
  const ImageDims dims{ds.channels(), ds.height(), ds.width()};
  const std::size_t d = dims.size();
  HybridBatch out{{Tensor({indices.size(), d}), std::vector<int>(indices.size())},
                  Tensor({indices.size(), d})};
  std::vector<double> partner(d);
  auto draw_label = [&] {
    return static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(augment->num_labels)));
  };

  for (std::size_t k = 0; k < indices.size(); ++k) {
    const std::size_t i = indices[k];
    if (i >= ds.count()) throw ArgumentError("sample index out of range");
    std::size_t j = static_cast<std::size_t>(rng.uniform_int(ds.count()));
    if (ds.count() > 1) {
      while (j == i) j = static_cast<std::size_t>(rng.uniform_int(ds.count()));
    }

    auto pos = out.positive.inputs.row(k);
    if (augment) {
      const int label = draw_label();
      apply_task_transform(augment->kind, label, ds.sample(i), pos, dims);
      apply_task_transform(augment->kind, draw_label(), ds.sample(j), partner, dims);
      out.positive.task_labels[k] = label;
    } else {
      auto a = ds.sample(i);
      auto b = ds.sample(j);
      std::copy(a.begin(), a.end(), pos.begin());
      std::copy(b.begin(), b.end(), partner.begin());
      out.positive.task_labels[k] = ds.labels[i];
    }

    const HybridMask mask = generate_blur_mask(dims.height, dims.width, rng, params);
    auto neg = out.negative.row(k);
    for (std::size_t p = 0; p < d; ++p) {
      const double m = mask.mask[p % dims.plane()];
      neg[p] = m * pos[p] + (1.0 - m) * partner[p];
    }
  }
  return out;
}

}  // namespace ffb
