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
#include <string>
#include <vector>

#include "ffbench/core/tensor.hpp"

namespace ffb {

struct Embedding2D {
  Tensor coords;  // [n × 2]
  std::vector<int> labels;
  std::optional<std::vector<double>> activity;

  void validate() const;
};

/// Header "x,y,label,activity", then one row per sample. Reals use 17 significant
/// digits; the activity cells are empty when there is no activity.
std::string embedding_to_csv(const Embedding2D& e);
Embedding2D parse_embedding_csv(const std::string& text);

void emit_embedding_csv(const Embedding2D& e, const std::filesystem::path& path);
Embedding2D load_embedding_csv(const std::filesystem::path& path);

}  // namespace ffb
