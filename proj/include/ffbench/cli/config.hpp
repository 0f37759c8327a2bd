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
#include <string>
#include <vector>

#include "ffbench/datasets/image_dataset.hpp"
#include "ffbench/eval/experiment.hpp"
#include "ffbench/eval/features.hpp"

namespace ffb {

inline constexpr int kConfigSchemaVersion = 1;

// Experiment config files are JSON objects carrying "schema_version": 1. Missing fields
// keep their defaults; unknown fields and bad values raise ConfigError naming the field
// path, e.g. "config.mask.threshold: must lie in (0, 1)".
ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string experiment_config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
void save_experiment_config(const ExperimentConfig& cfg, const std::filesystem::path& path);

/// t-SNE export of a trained run.
struct EmbedConfig {
  std::string run_dir;
  Split split = Split::test;
  std::size_t cap = 1000;
  std::vector<std::size_t> layer_set;  // empty: the run's transfer layers
  LabelMode label_mode = LabelMode::none;
  int label = 0;
  double perplexity = 30.0;
  int iterations = 1000;
  std::uint64_t seed = 0;
  std::string output = "embedding.csv";

  void validate() const;
  friend bool operator==(const EmbedConfig&, const EmbedConfig&) = default;
};

inline constexpr std::size_t kMaxEmbedSamples = 5000;

EmbedConfig parse_embed_config(const std::string& json_text);
std::string embed_config_to_json(const EmbedConfig& cfg);
EmbedConfig load_embed_config(const std::filesystem::path& path);

}  // namespace ffb
