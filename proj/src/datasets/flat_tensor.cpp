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

#include <cmath>
#include <cstring>
#include <utility>

#include "ffbench/datasets/formats.hpp"
#include "ffbench/error.hpp"

namespace ffb {

namespace {
constexpr char kMagic[4] = {'F', 'T', 'N', 'S'};
}

ImageDataset decode_flat_tensor(std::span<const std::uint8_t> bytes, std::string name, Split split) {
  ByteReader in(bytes);
  auto magic = in.take(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw FormatError("flat-tensor: bad magic");
  const auto version = in.u8();
  if (version != kFlatTensorVersion) {
    throw FormatError("flat-tensor: unsupported version " + std::to_string(version));
  }
  const auto rank = in.u8();
  if (rank != 4) throw FormatError("flat-tensor: expected rank 4 [N,C,H,W], got " + std::to_string(rank));
  Shape shape;
  for (int d = 0; d < rank; ++d) {
    const auto dim = in.u32_le();
    if (dim == 0) throw FormatError("flat-tensor: zero-sized dimension");
    shape.push_back(dim);
  }
  const auto num_classes = in.u32_le();
  const std::size_t n_pixels = shape_size(shape);
  const std::size_t count = shape[0];
  if (in.remaining() != n_pixels + count) {
    throw FormatError("flat-tensor: payload of " + std::to_string(in.remaining()) + " bytes, header " +
                      shape_string(shape) + " requires " + std::to_string(n_pixels + count));
  }
  auto px = in.take(n_pixels);
  auto lb = in.take(count);

  ImageDataset ds;
  ds.name = std::move(name);
  ds.split = split;
  ds.num_classes = static_cast<int>(num_classes);
  std::vector<double> pixels(n_pixels);
  for (std::size_t i = 0; i < n_pixels; ++i) pixels[i] = px[i] / 255.0;
  ds.images = Tensor(std::move(shape), std::move(pixels));
  ds.labels.assign(lb.begin(), lb.end());
  ds.validate();
  return ds;
}

ImageDataset load_flat_tensor(const std::filesystem::path& path, Split split) {
  try {
    return decode_flat_tensor(read_file(path), path.stem().string(), split);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Bytes encode_flat_tensor(const ImageDataset& ds) {
  ds.validate();
  if (ds.num_classes > 256) throw ArgumentError("flat-tensor: labels are stored as u8");
  ByteWriter out;
  out.append({reinterpret_cast<const std::uint8_t*>(kMagic), 4});
  out.u8(kFlatTensorVersion);
  out.u8(4);
  for (auto d : ds.images.shape()) out.u32_le(static_cast<std::uint32_t>(d));
  out.u32_le(static_cast<std::uint32_t>(ds.num_classes));
  Bytes px(ds.images.size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = static_cast<std::uint8_t>(std::lround(ds.images[i] * 255.0));
  }
  out.append(px);
  for (int l : ds.labels) out.u8(static_cast<std::uint8_t>(l));
  return out.release();
}

void save_flat_tensor(const ImageDataset& ds, const std::filesystem::path& path) {
  write_file(path, encode_flat_tensor(ds));
}

}  // namespace ffb
