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

#include "ffbench/datasets/registry.hpp"

#include <array>

#include "ffbench/datasets/formats.hpp"
#include "ffbench/error.hpp"

namespace ffb {

namespace fs = std::filesystem;

namespace {

fs::path find_file(const fs::path& dir, const std::string& name) {
  for (const auto& candidate : {dir / name, dir / (name + ".gz")}) {
    if (fs::exists(candidate)) return candidate;
  }
  throw ConfigError("dataset file " + (dir / name).string() + " is missing; run `ffbench fetch " +
                    dir.filename().string() + "` or place it there");
}

}  // namespace

bool is_known_dataset(const std::string& name) {
  return name == "mnist" || name == "fmnist" || name == "cifar10" || name == "svhn";
}

ImageDataset load_dataset(const std::string& name, Split split, const fs::path& cache_dir) {
  const fs::path dir = cache_dir / name;
  if (name == "mnist" || name == "fmnist") {
    const std::string prefix = split == Split::train ? "train" : "t10k";
    return load_idx_dataset(find_file(dir, prefix + "-images-idx3-ubyte"),
                            find_file(dir, prefix + "-labels-idx1-ubyte"), name, split);
  }
  if (name == "cifar10") {
    fs::path base = dir;
    if (fs::exists(dir / "cifar-10-batches-bin")) base = dir / "cifar-10-batches-bin";
    std::vector<fs::path> files;
    if (split == Split::train) {
      for (int b = 1; b <= 5; ++b) files.push_back(find_file(base, "data_batch_" + std::to_string(b) + ".bin"));
    } else {
      files.push_back(find_file(base, "test_batch.bin"));
    }
    return load_cifar10_binary(files, name, split);
  }
  if (name == "svhn") {
    ImageDataset ds = load_flat_tensor(find_file(dir, to_string(split) + ".ftns"), split);
    ds.name = name;
    return ds;
  }
  throw ConfigError("unknown dataset '" + name + "'");
}

}  // namespace ffb
