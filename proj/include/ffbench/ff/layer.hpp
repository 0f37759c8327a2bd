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

#include "ffbench/core/adam.hpp"
#include "ffbench/core/rng.hpp"
#include "ffbench/core/tensor.hpp"

namespace ffb {

/// Fully connected layer y = ReLU(x·W + b) with its own Adam state.
struct DenseLayer {
  Tensor weights;  // [fan_in × fan_out]
  Tensor bias;     // [fan_out]
  AdamState adam_w;
  AdamState adam_b;

  std::size_t fan_in() const { return weights.dim(0); }
  std::size_t fan_out() const { return weights.dim(1); }

  void set_learning_rate(double lr);
  /// Clears the Adam moments and step counters.
  void reset_optimizer();
  bool finite() const { return weights.all_finite() && bias.all_finite(); }
};

/// Weights ~ N(0, 2/fan_in), bias 0.
DenseLayer make_dense_layer(std::size_t fan_in, std::size_t fan_out, Rng& rng,
                            double learning_rate = kDefaultLearningRate);
/// Layer with the given parameters and a fresh optimizer.
DenseLayer make_dense_layer(Tensor weights, Tensor bias, double learning_rate = kDefaultLearningRate);

/// x·W + b.
Tensor layer_preactivation(const DenseLayer& layer, const Tensor& x);
/// ReLU(x·W + b).
Tensor layer_forward(const DenseLayer& layer, const Tensor& x);

/// One Adam step on both parameter tensors.
void apply_gradients(DenseLayer& layer, const Tensor& grad_w, const Tensor& grad_b);

}  // namespace ffb
