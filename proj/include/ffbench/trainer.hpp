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
#include <string>

namespace ffb {

/// Training method of a run; also the variant tag byte of checkpoint files.
enum class Trainer : std::uint8_t {
  ff = 0,
  bp_ce = 1,
  bp_goodness_last = 2,
  bp_goodness_all = 3,
  ff_unsupervised = 4,
};

std::string to_string(Trainer t);
/// Throws ArgumentError for unknown names.
Trainer trainer_from_string(const std::string& s);

inline bool is_backprop(Trainer t) {
  return t == Trainer::bp_ce || t == Trainer::bp_goodness_last || t == Trainer::bp_goodness_all;
}

/// Trainers whose pretext predictions come from goodness scans.
inline bool uses_goodness_inference(Trainer t) {
  return t == Trainer::ff || t == Trainer::bp_goodness_last || t == Trainer::bp_goodness_all;
}

}  // namespace ffb
