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

#include <utility>

#include "ffbench/datasets/formats.hpp"
#include "ffbench/error.hpp"

namespace ffb {

namespace {
constexpr std::size_t kPixels = 3 * 32 * 32;
}

ImageDataset parse_cifar10_binary(std::span<const std::uint8_t> bytes, std::string name, Split split) {
  if (bytes.empty() || bytes.size() % kCifarRecordBytes != 0) {
    throw FormatError("CIFAR-10: size " + std::to_string(bytes.size()) + " is not a positive multiple of " +
                      std::to_string(kCifarRecordBytes));
  }
  const std::size_t n = bytes.size() / kCifarRecordBytes;
  ImageDataset ds;
  ds.name = std::move(name);
  ds.split = split;
  ds.num_classes = 10;
  std::vector<double> pixels(n * kPixels);
  ds.labels.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::uint8_t* rec = bytes.data() + r * kCifarRecordBytes;
    ds.labels[r] = rec[0];
    for (std::size_t p = 0; p < kPixels; ++p) pixels[r * kPixels + p] = rec[1 + p] / 255.0;
  }
  ds.images = Tensor({n, 3, 32, 32}, std::move(pixels));
  ds.validate();
  return ds;
}

ImageDataset load_cifar10_binary(const std::vector<std::filesystem::path>& paths, std::string name,
                                 Split split) {
  if (paths.empty()) throw ArgumentError("CIFAR-10: no batch files given");
  Bytes all;
  for (const auto& p : paths) {
    Bytes b = read_file(p);
    if (b.size() % kCifarRecordBytes != 0) {
      throw FormatError(p.string() + ": size " + std::to_string(b.size()) + " is not a multiple of " +
                        std::to_string(kCifarRecordBytes));
    }
    all.insert(all.end(), b.begin(), b.end());
  }
  return parse_cifar10_binary(all, std::move(name), split);
}

}  // namespace ffb
