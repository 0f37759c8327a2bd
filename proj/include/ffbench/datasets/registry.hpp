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
#include <string>

#include "ffbench/datasets/image_dataset.hpp"

namespace ffb {

/// Loads a known dataset split from `cache_dir/<name>/`.
///
///   mnist, fmnist  train-images-idx3-ubyte, train-labels-idx1-ubyte, t10k-* (raw or .gz)
///   cifar10        data_batch_1..5.bin, test_batch.bin
///   svhn           train.ftns, test.ftns (flat-tensor, converted once from the .mat release)
ImageDataset load_dataset(const std::string& name, Split split, const std::filesystem::path& cache_dir);

bool is_known_dataset(const std::string& name);

}  // namespace ffb
