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
#include <functional>
#include <vector>

#include "ffbench/core/rng.hpp"
#include "ffbench/core/tensor.hpp"
#include "ffbench/ff/goodness.hpp"
#include "ffbench/ff/layer.hpp"

namespace ffb {

/// Stack of dense ReLU layers trained with per-layer goodness losses. Every layer after the
/// first consumes the row-wise length-normalized output of its predecessor.
struct FFNetwork {
  std::vector<DenseLayer> layers;
  double theta = kDefaultTheta;
  GoodnessMode mode = GoodnessMode::mean_sq;
  /// Always on for forward-forward; the backprop baselines may switch it off.
  bool normalize_between = true;

  std::size_t input_dim() const { return layers.front().fan_in(); }
  std::size_t depth() const { return layers.size(); }
  std::vector<std::size_t> widths() const;
  void set_learning_rate(double lr);
  bool finite() const;
  /// Checks chaining dimensions and θ > 0.
  void validate() const;
};

/// Layer stack shared by the forward-forward and backprop trainers, so equal seeds give
/// equal initial weights.
std::vector<DenseLayer> init_layers(std::size_t input_dim, const std::vector<std::size_t>& widths, Rng& rng,
                                    double learning_rate = kDefaultLearningRate);

FFNetwork make_ff_network(std::size_t input_dim, const std::vector<std::size_t>& widths, Rng& rng,
                          double theta = kDefaultTheta, GoodnessMode mode = GoodnessMode::mean_sq,
                          double learning_rate = kDefaultLearningRate);

/// Called with each layer's raw activations before they are normalized for the next layer.
/// Lets tests inject perturbations between layers.
using ActivationHook = std::function<void(std::size_t layer, Tensor& activations)>;

/// Raw (unnormalized) post-ReLU activations of every layer.
std::vector<Tensor> ff_forward_all(const FFNetwork& net, const Tensor& batch, const ActivationHook& hook = {});

/// What layer i+1 reads given layer i's raw output.
Tensor next_layer_input(const FFNetwork& net, const Tensor& activations);

/// Per-row goodness of an activation matrix.
std::vector<double> row_goodness(const Tensor& activations, GoodnessMode mode);

struct LayerGradients {
  Tensor weights;
  Tensor bias;
  /// Batch-mean layer loss before any update.
  double loss = 0.0;
  /// Rows classified correctly by p(positive) > 0.5 (positives) or < 0.5 (negatives).
  std::size_t positive_hits = 0;
  std::size_t negative_hits = 0;
};

/// Mean over paired rows of softplus(θ − g(pos)) + softplus(g(neg) − θ). The inputs are
/// treated as constants.
double layer_local_loss(const DenseLayer& layer, const Tensor& x_pos, const Tensor& x_neg, double theta,
                        GoodnessMode mode);

/// Closed-form gradient of layer_local_loss with respect to W and b.
LayerGradients layer_local_gradients(const DenseLayer& layer, const Tensor& x_pos, const Tensor& x_neg,
                                     double theta, GoodnessMode mode);

/// One Adam step on the layer's own loss; returns the pre-update loss.
double layer_local_update(DenseLayer& layer, const Tensor& x_pos, const Tensor& x_neg, double theta,
                          GoodnessMode mode);

}  // namespace ffb
