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
#include <vector>

namespace ffb {

using Bytes = std::vector<std::uint8_t>;

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

bool is_gzip(std::span<const std::uint8_t> bytes);
/// Inflates a gzip stream; throws FormatError on corrupt input.
Bytes gunzip(std::span<const std::uint8_t> bytes);
/// Reads a file and inflates it if it starts with the gzip magic 0x1f 0x8b.
Bytes read_maybe_gzip(const std::filesystem::path& path);

/// Little/big-endian helpers over a bounds-checked cursor.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t position() const { return pos_; }

  std::uint8_t u8();
  std::uint32_t u32_be();
  std::uint32_t u32_le();
  std::uint64_t u64_le();
  double f64_le();
  std::span<const std::uint8_t> take(std::size_t n);

 private:
  void need(std::size_t n) const;

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32_le(std::uint32_t v);
  void u64_le(std::uint64_t v);
  void f64_le(double v);
  void append(std::span<const std::uint8_t> bytes);

  const Bytes& bytes() const { return out_; }
  Bytes release() { return std::move(out_); }

 private:
  Bytes out_;
};

}  // namespace ffb
