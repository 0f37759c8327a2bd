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

#include "ffbench/tasks/transforms.hpp"

#include <algorithm>
#include <numeric>

#include "ffbench/error.hpp"

namespace ffb {

namespace {

ImageDims dims_of(const Tensor& img) {
  if (img.rank() != 3) throw ArgumentError("expected a [C×H×W] image, got " + shape_string(img.shape()));
  return {img.dim(0), img.dim(1), img.dim(2)};
}

void check_spans(std::span<const double> src, std::span<double> dst, const ImageDims& d) {
  if (src.size() != d.size() || dst.size() != d.size()) throw ShapeError("image buffer does not match dims");
  if (src.data() == dst.data()) throw ArgumentError("transform source and destination must not alias");
}

void rotate(std::span<const double> src, std::span<double> dst, const ImageDims& d, int k) {
  if (d.height != d.width) throw ArgumentError("rotation requires a square image");
  const std::size_t n = d.width;
  k = ((k % 4) + 4) % 4;
  for (std::size_t c = 0; c < d.channels; ++c) {
    const double* in = src.data() + c * d.plane();
    double* out = dst.data() + c * d.plane();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t si = i, sj = j;
        switch (k) {
          case 1: si = j; sj = n - 1 - i; break;
          case 2: si = n - 1 - i; sj = n - 1 - j; break;
          case 3: si = n - 1 - j; sj = i; break;
          default: break;
        }
        out[i * n + j] = in[si * n + sj];
      }
    }
  }
}

void flip(std::span<const double> src, std::span<double> dst, const ImageDims& d, FlipMode mode) {
  const bool h = mode == FlipMode::h || mode == FlipMode::hv;
  const bool v = mode == FlipMode::v || mode == FlipMode::hv;
  for (std::size_t c = 0; c < d.channels; ++c) {
    const double* in = src.data() + c * d.plane();
    double* out = dst.data() + c * d.plane();
    for (std::size_t i = 0; i < d.height; ++i) {
      const std::size_t si = v ? d.height - 1 - i : i;
      for (std::size_t j = 0; j < d.width; ++j) {
        const std::size_t sj = h ? d.width - 1 - j : j;
        out[i * d.width + j] = in[si * d.width + sj];
      }
    }
  }
}

void jigsaw(std::span<const double> src, std::span<double> dst, const ImageDims& d, int perm_index) {
  if (d.height % 2 != 0 || d.width % 2 != 0) throw ArgumentError("jigsaw requires even height and width");
  const auto perm = jigsaw_permutation(perm_index);
  const std::size_t ph = d.height / 2;
  const std::size_t pw = d.width / 2;
  for (std::size_t c = 0; c < d.channels; ++c) {
    const double* in = src.data() + c * d.plane();
    double* out = dst.data() + c * d.plane();
    for (std::size_t slot = 0; slot < 4; ++slot) {
      const auto from = static_cast<std::size_t>(perm[slot]);
      const std::size_t oi = (slot / 2) * ph, oj = (slot % 2) * pw;
      const std::size_t si = (from / 2) * ph, sj = (from % 2) * pw;
      for (std::size_t r = 0; r < ph; ++r) {
        std::copy_n(in + (si + r) * d.width + sj, pw, out + (oi + r) * d.width + oj);
      }
    }
  }
}

}  // namespace

std::array<int, 4> jigsaw_permutation(int perm_index) {
  if (perm_index < 0 || perm_index >= 24) {
    throw ArgumentError("jigsaw permutation index " + std::to_string(perm_index) + " outside [0, 24)");
  }
  std::array<int, 4> perm{0, 1, 2, 3};
  for (int i = 0; i < perm_index; ++i) std::next_permutation(perm.begin(), perm.end());
  return perm;
}

int jigsaw_rank(const std::array<int, 4>& perm) {
  static constexpr int kFactorial[] = {6, 2, 1, 1};
  int rank = 0;
  for (int i = 0; i < 4; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < 4; ++j) smaller += perm[j] < perm[i] ? 1 : 0;
    rank += smaller * kFactorial[i];
  }
  return rank;
}

int jigsaw_inverse_index(int perm_index) {
  const auto perm = jigsaw_permutation(perm_index);
  std::array<int, 4> inv{};
  for (int s = 0; s < 4; ++s) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])] = s;
  return jigsaw_rank(inv);
}

FlipMode flip_mode_for_label(TaskKind kind, int label) {
  if (kind == TaskKind::flip_h) {
    if (label < 0 || label > 1) throw ArgumentError("flip_h label must be 0 or 1");
    return label == 0 ? FlipMode::none : FlipMode::h;
  }
  if (kind == TaskKind::flip_hv) {
    static constexpr FlipMode kModes[] = {FlipMode::none, FlipMode::h, FlipMode::v, FlipMode::hv};
    if (label < 0 || label > 3) throw ArgumentError("flip_hv label must be in [0, 4)");
    return kModes[label];
  }
  throw ArgumentError("not a flip task");
}

void apply_task_transform(TaskKind kind, int label, std::span<const double> src, std::span<double> dst,
                          const ImageDims& dims) {
  check_spans(src, dst, dims);
  switch (kind) {
    case TaskKind::classify: std::copy(src.begin(), src.end(), dst.begin()); return;
    case TaskKind::rotation:
      if (label < 0 || label > 3) throw ArgumentError("rotation label must be in [0, 4)");
      rotate(src, dst, dims, label);
      return;
    case TaskKind::flip_h:
    case TaskKind::flip_hv: flip(src, dst, dims, flip_mode_for_label(kind, label)); return;
    case TaskKind::jigsaw2x2: jigsaw(src, dst, dims, label); return;
  }
}

Tensor apply_task_transform(TaskKind kind, int label, const Tensor& img) {
  const auto d = dims_of(img);
  Tensor out(img.shape());
  apply_task_transform(kind, label, img.values(), out.values(), d);
  return out;
}

Tensor apply_rotation(const Tensor& img, int k) {
  const auto d = dims_of(img);
  Tensor out(img.shape());
  rotate(img.values(), out.values(), d, k);
  return out;
}

Tensor apply_flip(const Tensor& img, FlipMode mode) {
  const auto d = dims_of(img);
  Tensor out(img.shape());
  flip(img.values(), out.values(), d, mode);
  return out;
}

Tensor apply_jigsaw(const Tensor& img, int perm_index) {
  const auto d = dims_of(img);
  Tensor out(img.shape());
  jigsaw(img.values(), out.values(), d, perm_index);
  return out;
}

}  // namespace ffb
