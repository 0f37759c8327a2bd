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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ffbench/core/tensor.hpp"
#include "ffbench/datasets/image_dataset.hpp"
#include "ffbench/datasets/io.hpp"

namespace ffb {

/// Raw unsigned-byte array as stored in IDX files.
struct ByteTensor {
  Shape shape;
  std::vector<std::uint8_t> data;
};

// IDX: 0x00 0x00 <type 0x08> <rank>, rank big-endian u32 dims, then payload.
ByteTensor parse_idx(std::span<const std::uint8_t> bytes);
/// Reads raw or gzip-compressed IDX (gzip detected by magic bytes).
ByteTensor load_idx(const std::filesystem::path& path);

/// Pairs an IDX image file [N×H×W] with an IDX label file [N].
ImageDataset load_idx_dataset(const std::filesystem::path& images, const std::filesystem::path& labels,
                              std::string name, Split split, int num_classes = 10);

inline constexpr std::size_t kCifarRecordBytes = 3073;

/// CIFAR-10 binary batches: records of 1 label byte + 3×32×32 channel-planar pixels.
ImageDataset parse_cifar10_binary(std::span<const std::uint8_t> bytes, std::string name = "cifar10",
                                  Split split = Split::train);
ImageDataset load_cifar10_binary(const std::vector<std::filesystem::path>& paths,
                                 std::string name = "cifar10", Split split = Split::train);

// Flat-tensor container:
//   "FTNS" | u8 version=1 | u8 rank | rank × u32 LE dims | u32 LE num_classes
//   | u8 pixels (row-major, product(dims) bytes) | dims[0] × u8 labels
inline constexpr std::uint8_t kFlatTensorVersion = 1;

ImageDataset decode_flat_tensor(std::span<const std::uint8_t> bytes, std::string name, Split split);
ImageDataset load_flat_tensor(const std::filesystem::path& path, Split split = Split::train);
/// Pixels are quantized as round(255·x); datasets loaded from bytes round-trip exactly.
Bytes encode_flat_tensor(const ImageDataset& ds);
void save_flat_tensor(const ImageDataset& ds, const std::filesystem::path& path);

}  // namespace ffb
