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

#include "ffbench/datasets/image_dataset.hpp"

#include <algorithm>
#include <cstring>

#include "ffbench/error.hpp"

namespace ffb {

std::string to_string(Split split) { return split == Split::train ? "train" : "test"; }

Split split_from_string(const std::string& s) {
  if (s == "train") return Split::train;
  if (s == "test") return Split::test;
  throw ArgumentError("unknown split '" + s + "'");
}

std::span<const double> ImageDataset::sample(std::size_t i) const {
  const std::size_t d = flat_dim();
  return {images.data() + i * d, d};
}

Tensor ImageDataset::image(std::size_t i) const {
  auto s = sample(i);
  return Tensor({channels(), height(), width()}, std::vector<double>(s.begin(), s.end()));
}

void ImageDataset::validate() const {
  if (images.rank() != 4) {
    throw ValidationError(name + ": images must be rank 4, got " + shape_string(images.shape()));
  }
  if (labels.empty()) throw ValidationError(name + ": dataset is empty");
  if (images.dim(0) != labels.size()) {
    throw ValidationError(name + ": " + std::to_string(images.dim(0)) + " images but " +
                          std::to_string(labels.size()) + " labels");
  }
  if (num_classes < 1) throw ValidationError(name + ": num_classes must be positive");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw ValidationError(name + ": label " + std::to_string(labels[i]) + " at index " +
                            std::to_string(i) + " outside [0, " + std::to_string(num_classes) + ")");
    }
  }
  for (double v : images.values()) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(name + ": pixel outside [0,1]");
  }
}

ImageDataset make_subset(const ImageDataset& ds, const std::vector<int>& classes) {
  if (classes.empty()) throw ArgumentError("make_subset: empty class list");
  std::vector<int> remap(static_cast<std::size_t>(ds.num_classes), -1);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const int c = classes[k];
    if (c < 0 || c >= ds.num_classes) {
      throw ArgumentError("make_subset: class " + std::to_string(c) + " outside [0, " +
                          std::to_string(ds.num_classes) + ")");
    }
    if (remap[static_cast<std::size_t>(c)] != -1) {
      throw ArgumentError("make_subset: class " + std::to_string(c) + " listed twice");
    }
    remap[static_cast<std::size_t>(c)] = static_cast<int>(k);
  }

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ds.count(); ++i) {
    if (remap[static_cast<std::size_t>(ds.labels[i])] >= 0) keep.push_back(i);
  }
  if (keep.empty()) throw ArgumentError("make_subset: no samples of the requested classes");

  ImageDataset out;
  out.name = ds.name;
  out.split = ds.split;
  out.num_classes = static_cast<int>(classes.size());
  Shape shape = ds.images.shape();
  shape[0] = keep.size();
  const std::size_t d = ds.flat_dim();
  std::vector<double> data(keep.size() * d);
  out.labels.reserve(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    auto src = ds.sample(keep[k]);
    std::copy(src.begin(), src.end(), data.begin() + static_cast<std::ptrdiff_t>(k * d));
    out.labels.push_back(remap[static_cast<std::size_t>(ds.labels[keep[k]])]);
  }
  out.images = Tensor(std::move(shape), std::move(data));
  return out;
}

ImageDataset take_first(const ImageDataset& ds, std::size_t n) {
  n = std::min(n, ds.count());
  if (n == 0) throw ArgumentError("take_first: n must be positive");
  if (n == ds.count()) return ds;
  ImageDataset out;
  out.name = ds.name;
  out.split = ds.split;
  out.num_classes = ds.num_classes;
  Shape shape = ds.images.shape();
  shape[0] = n;
  const auto& src = ds.images.storage();
  out.images = Tensor(std::move(shape),
                      std::vector<double>(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(n * ds.flat_dim())));
  out.labels.assign(ds.labels.begin(), ds.labels.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

Tensor flat_batch(const ImageDataset& ds, std::span<const std::size_t> indices) {
  const std::size_t d = ds.flat_dim();
  Tensor out({indices.size(), d});
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= ds.count()) throw ArgumentError("sample index out of range");
    auto src = ds.sample(indices[k]);
    std::copy(src.begin(), src.end(), out.row(k).begin());
  }
  return out;
}

std::uint64_t sample_hash(const ImageDataset& ds, std::size_t i) {
  auto s = ds.sample(i);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto* bytes = reinterpret_cast<const unsigned char*>(s.data());
  for (std::size_t b = 0; b < s.size_bytes(); ++b) {
    h ^= bytes[b];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ffb
