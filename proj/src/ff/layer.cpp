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

#include "ffbench/ff/layer.hpp"

#include <cmath>

#include "ffbench/core/linalg.hpp"
#include "ffbench/error.hpp"

namespace ffb {

void DenseLayer::set_learning_rate(double lr) {
  adam_w.learning_rate = lr;
  adam_b.learning_rate = lr;
}

void DenseLayer::reset_optimizer() {
  const double lr = adam_w.learning_rate;
  adam_w = AdamState::for_shape(weights.shape(), lr);
  adam_b = AdamState::for_shape(bias.shape(), lr);
}

DenseLayer make_dense_layer(std::size_t fan_in, std::size_t fan_out, Rng& rng, double learning_rate) {
  if (fan_in == 0 || fan_out == 0) throw ArgumentError("layer dimensions must be positive");
  Tensor w({fan_in, fan_out});
  const double stddev = std::sqrt(2.0 / static_cast<double>(fan_in));
  for (auto& v : w.values()) v = stddev * rng.normal();
  return make_dense_layer(std::move(w), Tensor({fan_out}), learning_rate);
}

DenseLayer make_dense_layer(Tensor weights, Tensor bias, double learning_rate) {
  if (weights.rank() != 2 || bias.rank() != 1 || bias.dim(0) != weights.dim(1)) {
    throw ShapeError("layer weights " + shape_string(weights.shape()) + " and bias " +
                     shape_string(bias.shape()) + " do not match");
  }
  DenseLayer layer;
  layer.adam_w = AdamState::for_shape(weights.shape(), learning_rate);
  layer.adam_b = AdamState::for_shape(bias.shape(), learning_rate);
  layer.weights = std::move(weights);
  layer.bias = std::move(bias);
  return layer;
}

Tensor layer_preactivation(const DenseLayer& layer, const Tensor& x) {
  if (x.rank() != 2 || x.cols() != layer.fan_in()) {
    throw ShapeError("layer input " + shape_string(x.shape()) + " does not match fan_in " +
                     std::to_string(layer.fan_in()));
  }
  Tensor z = matmul(x, layer.weights);
  add_row_vector(z, layer.bias);
  return z;
}

Tensor layer_forward(const DenseLayer& layer, const Tensor& x) {
  Tensor y = layer_preactivation(layer, x);
  relu_inplace(y);
  return y;
}

void apply_gradients(DenseLayer& layer, const Tensor& grad_w, const Tensor& grad_b) {
  adam_step(layer.weights, grad_w, layer.adam_w);
  adam_step(layer.bias, grad_b, layer.adam_b);
}

}  // namespace ffb
