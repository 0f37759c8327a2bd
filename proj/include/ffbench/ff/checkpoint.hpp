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

#include <filesystem>
#include <optional>
#include <span>

#include "ffbench/datasets/io.hpp"
#include "ffbench/ff/layer.hpp"
#include "ffbench/ff/network.hpp"
#include "ffbench/trainer.hpp"

namespace ffb {

// FFCK layout, all integers little-endian:
//   "FFCK" | u8 version=1 | u8 trainer tag | u8 goodness_mode | u8 normalize_between
//   | f64 theta | u32 layer_count
//   | layer_count × (u32 fan_in | u32 fan_out | f64 weights[fan_in·fan_out] | f64 bias[fan_out])
//   | u8 has_head | [u32 fan_in | u32 fan_out | f64 weights | f64 bias]
// Optimizer state is not stored; loaded layers start with fresh Adam moments.
inline constexpr std::uint8_t kCheckpointVersion = 1;

struct Checkpoint {
  Trainer trainer = Trainer::ff;
  FFNetwork backbone;
  std::optional<DenseLayer> head;
};

Bytes encode_checkpoint(const Checkpoint& ckpt);
Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes);

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace ffb
