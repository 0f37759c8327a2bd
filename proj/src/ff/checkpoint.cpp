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

#include "ffbench/ff/checkpoint.hpp"

#include <cstring>

#include "ffbench/error.hpp"

namespace ffb {

std::string to_string(Trainer t) {
  switch (t) {
    case Trainer::ff: return "ff";
    case Trainer::bp_ce: return "bp_ce";
    case Trainer::bp_goodness_last: return "bp_goodness_last";
    case Trainer::bp_goodness_all: return "bp_goodness_all";
    case Trainer::ff_unsupervised: return "ff_unsupervised";
  }
  return "?";
}

Trainer trainer_from_string(const std::string& s) {
  if (s == "ff") return Trainer::ff;
  if (s == "bp_ce") return Trainer::bp_ce;
  if (s == "bp_goodness_last") return Trainer::bp_goodness_last;
  if (s == "bp_goodness_all") return Trainer::bp_goodness_all;
  if (s == "ff_unsupervised") return Trainer::ff_unsupervised;
  throw ArgumentError("unknown trainer '" + s + "'");
}

namespace {

constexpr char kMagic[4] = {'F', 'F', 'C', 'K'};

void write_layer(ByteWriter& out, const DenseLayer& layer) {
  out.u32_le(static_cast<std::uint32_t>(layer.fan_in()));
  out.u32_le(static_cast<std::uint32_t>(layer.fan_out()));
  for (double v : layer.weights.values()) out.f64_le(v);
  for (double v : layer.bias.values()) out.f64_le(v);
}

DenseLayer read_layer(ByteReader& in) {
  const std::size_t fan_in = in.u32_le();
  const std::size_t fan_out = in.u32_le();
  if (fan_in == 0 || fan_out == 0) throw FormatError("checkpoint: zero layer dimension");
  if (in.remaining() < 8 * (fan_in * fan_out + fan_out)) throw FormatError("checkpoint: truncated layer");
  std::vector<double> w(fan_in * fan_out);
  for (auto& v : w) v = in.f64_le();
  std::vector<double> b(fan_out);
  for (auto& v : b) v = in.f64_le();
  return make_dense_layer(Tensor({fan_in, fan_out}, std::move(w)), Tensor({fan_out}, std::move(b)));
}

}  // namespace

Bytes encode_checkpoint(const Checkpoint& ckpt) {
  ckpt.backbone.validate();
  ByteWriter out;
  out.append({reinterpret_cast<const std::uint8_t*>(kMagic), 4});
  out.u8(kCheckpointVersion);
  out.u8(static_cast<std::uint8_t>(ckpt.trainer));
  out.u8(static_cast<std::uint8_t>(ckpt.backbone.mode));
  out.u8(ckpt.backbone.normalize_between ? 1 : 0);
  out.f64_le(ckpt.backbone.theta);
  out.u32_le(static_cast<std::uint32_t>(ckpt.backbone.layers.size()));
  for (const auto& layer : ckpt.backbone.layers) write_layer(out, layer);
  out.u8(ckpt.head ? 1 : 0);
  if (ckpt.head) write_layer(out, *ckpt.head);
  return out.release();
}

Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  auto magic = in.take(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw FormatError("checkpoint: bad magic");
  const auto version = in.u8();
  if (version != kCheckpointVersion) throw FormatError("checkpoint: unsupported version " + std::to_string(version));
  const auto tag = in.u8();
  if (tag > static_cast<std::uint8_t>(Trainer::ff_unsupervised)) throw FormatError("checkpoint: unknown trainer tag");
  const auto mode = in.u8();
  if (mode > static_cast<std::uint8_t>(GoodnessMode::l2norm)) throw FormatError("checkpoint: unknown goodness mode");
  const auto normalize = in.u8();

  Checkpoint ckpt;
  ckpt.trainer = static_cast<Trainer>(tag);
  ckpt.backbone.mode = static_cast<GoodnessMode>(mode);
  ckpt.backbone.normalize_between = normalize != 0;
  ckpt.backbone.theta = in.f64_le();
  const auto count = in.u32_le();
  if (count == 0) throw FormatError("checkpoint: no layers");
  for (std::uint32_t i = 0; i < count; ++i) ckpt.backbone.layers.push_back(read_layer(in));
  if (in.u8() != 0) ckpt.head = read_layer(in);
  if (in.remaining() != 0) throw FormatError("checkpoint: trailing bytes");
  ckpt.backbone.validate();
  if (ckpt.head && ckpt.head->fan_in() != ckpt.backbone.layers.back().fan_out()) {
    throw FormatError("checkpoint: head does not match last layer width");
  }
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  write_file(path, encode_checkpoint(ckpt));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  try {
    return decode_checkpoint(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace ffb
