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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ffb {

/// Counter-based generator: draw n is splitmix64_mix(seed + n * 0x9E3779B97F4A7C15).
///
/// The stream is a pure function of (seed, counter), so results are identical on
/// every platform. Independent sub-streams are derived with split(), which hashes
/// the parent seed together with a stream id; the parent counter is not touched.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n); unbiased (Lemire's multiply-and-reject).
  std::uint64_t uniform_int(std::uint64_t n);
  /// Standard normal via Box-Muller; consumes two draws per call.
  double normal();

  Rng split(std::uint64_t stream_id) const;

  /// Fisher-Yates with uniform_int, so permutations do not depend on the STL.
  void shuffle(std::span<std::size_t> values);
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

// Sub-stream ids derived from an experiment's master seed.
namespace streams {
inline constexpr std::uint64_t kInit = 1;
inline constexpr std::uint64_t kShuffle = 2;
inline constexpr std::uint64_t kTask = 3;
inline constexpr std::uint64_t kProbe = 4;
inline constexpr std::uint64_t kEval = 5;
inline constexpr std::uint64_t kMask = 6;
inline constexpr std::uint64_t kExport = 7;
inline constexpr std::uint64_t kTsne = 8;
}  // namespace streams

}  // namespace ffb
