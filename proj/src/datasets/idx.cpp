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

ByteTensor parse_idx(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  if (bytes.size() < 4) throw FormatError("IDX: file shorter than the 4-byte magic");
  const auto z0 = in.u8();
  const auto z1 = in.u8();
  const auto type = in.u8();
  const auto rank = in.u8();
  if (z0 != 0 || z1 != 0) throw FormatError("IDX: bad magic");
  if (type != 0x08) throw FormatError("IDX: unsupported element type " + std::to_string(type));
  if (rank == 0) throw FormatError("IDX: zero-rank tensor");

  ByteTensor out;
  std::size_t count = 1;
  for (int d = 0; d < rank; ++d) {
    const auto dim = in.u32_be();
    if (dim == 0) throw FormatError("IDX: zero-sized dimension");
    out.shape.push_back(dim);
    count *= dim;
  }
  if (in.remaining() != count) {
    throw FormatError("IDX: payload has " + std::to_string(in.remaining()) + " bytes, header promises " +
                      std::to_string(count));
  }
  auto payload = in.take(count);
  out.data.assign(payload.begin(), payload.end());
  return out;
}

ByteTensor load_idx(const std::filesystem::path& path) {
  try {
    return parse_idx(read_maybe_gzip(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

ImageDataset load_idx_dataset(const std::filesystem::path& images, const std::filesystem::path& labels,
                              std::string name, Split split, int num_classes) {
  ByteTensor img = load_idx(images);
  ByteTensor lab = load_idx(labels);
  if (img.shape.size() != 3) throw FormatError(images.string() + ": expected rank-3 image tensor");
  if (lab.shape.size() != 1) throw FormatError(labels.string() + ": expected rank-1 label tensor");
  if (img.shape[0] != lab.shape[0]) throw FormatError("IDX: image and label counts differ");

  ImageDataset ds;
  ds.name = std::move(name);
  ds.split = split;
  ds.num_classes = num_classes;
  std::vector<double> pixels(img.data.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = img.data[i] / 255.0;
  ds.images = Tensor({img.shape[0], 1, img.shape[1], img.shape[2]}, std::move(pixels));
  ds.labels.assign(lab.data.begin(), lab.data.end());
  ds.validate();
  return ds;
}

}  // namespace ffb
