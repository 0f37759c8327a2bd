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

#include "ffbench/ff/network.hpp"

#include <algorithm>

#include "ffbench/core/linalg.hpp"
#include "ffbench/error.hpp"

namespace ffb {

std::vector<std::size_t> FFNetwork::widths() const {
  std::vector<std::size_t> w;
  for (const auto& l : layers) w.push_back(l.fan_out());
  return w;
}

void FFNetwork::set_learning_rate(double lr) {
  for (auto& l : layers) l.set_learning_rate(lr);
}

bool FFNetwork::finite() const {
  return std::all_of(layers.begin(), layers.end(), [](const DenseLayer& l) { return l.finite(); });
}

void FFNetwork::validate() const {
  if (layers.empty()) throw ArgumentError("network has no layers");
  if (!(theta > 0.0)) throw ArgumentError("theta must be positive");
  for (std::size_t i = 1; i < layers.size(); ++i) {
    if (layers[i].fan_in() != layers[i - 1].fan_out()) {
      throw ShapeError("layer " + std::to_string(i) + " fan_in " + std::to_string(layers[i].fan_in()) +
                       " does not match previous width " + std::to_string(layers[i - 1].fan_out()));
    }
  }
}

std::vector<DenseLayer> init_layers(std::size_t input_dim, const std::vector<std::size_t>& widths, Rng& rng,
                                    double learning_rate) {
  if (widths.empty()) throw ArgumentError("at least one layer width required");
  std::vector<DenseLayer> layers;
  std::size_t fan_in = input_dim;
  for (auto w : widths) {
    layers.push_back(make_dense_layer(fan_in, w, rng, learning_rate));
    fan_in = w;
  }
  return layers;
}

FFNetwork make_ff_network(std::size_t input_dim, const std::vector<std::size_t>& widths, Rng& rng, double theta,
                          GoodnessMode mode, double learning_rate) {
  FFNetwork net;
  net.layers = init_layers(input_dim, widths, rng, learning_rate);
  net.theta = theta;
  net.mode = mode;
  net.validate();
  return net;
}

Tensor next_layer_input(const FFNetwork& net, const Tensor& activations) {
  return net.normalize_between ? l2_normalize_rows(activations) : activations;
}

std::vector<Tensor> ff_forward_all(const FFNetwork& net, const Tensor& batch, const ActivationHook& hook) {
  std::vector<Tensor> acts;
  acts.reserve(net.layers.size());
  Tensor input = batch;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    Tensor y = layer_forward(net.layers[i], input);
    if (hook) hook(i, y);
    if (i + 1 < net.layers.size()) input = next_layer_input(net, y);
    acts.push_back(std::move(y));
  }
  return acts;
}

std::vector<double> row_goodness(const Tensor& activations, GoodnessMode mode) {
  std::vector<double> g(activations.rows());
  for (std::size_t r = 0; r < g.size(); ++r) g[r] = goodness(activations.row(r), mode);
  return g;
}

namespace {

void check_pair(const DenseLayer& layer, const Tensor& x_pos, const Tensor& x_neg) {
  if (x_pos.shape() != x_neg.shape()) {
    throw ShapeError("positive " + shape_string(x_pos.shape()) + " and negative " + shape_string(x_neg.shape()) +
                     " batches differ");
  }
  if (x_pos.rank() != 2 || x_pos.cols() != layer.fan_in()) {
    throw ShapeError("batch " + shape_string(x_pos.shape()) + " does not match fan_in " +
                     std::to_string(layer.fan_in()));
  }
}

}  // namespace

double layer_local_loss(const DenseLayer& layer, const Tensor& x_pos, const Tensor& x_neg, double theta,
                        GoodnessMode mode) {
  check_pair(layer, x_pos, x_neg);
  const auto gp = row_goodness(layer_forward(layer, x_pos), mode);
  const auto gn = row_goodness(layer_forward(layer, x_neg), mode);
  double total = 0.0;
  for (std::size_t r = 0; r < gp.size(); ++r) total += layer_loss(gp[r], gn[r], theta);
  return total / static_cast<double>(gp.size());
}

LayerGradients layer_local_gradients(const DenseLayer& layer, const Tensor& x_pos, const Tensor& x_neg,
                                     double theta, GoodnessMode mode) {
  check_pair(layer, x_pos, x_neg);
  const std::size_t batch = x_pos.rows();
  const double inv_b = 1.0 / static_cast<double>(batch);

  Tensor dz_pos = layer_forward(layer, x_pos);
  Tensor dz_neg = layer_forward(layer, x_neg);

  LayerGradients out;
  double total = 0.0;
  for (std::size_t r = 0; r < batch; ++r) {
    auto yp = dz_pos.row(r);
    auto yn = dz_neg.row(r);
    const double gp = goodness(yp, mode);
    const double gn = goodness(yn, mode);
    total += layer_loss(gp, gn, theta);
    if (gp > theta) ++out.positive_hits;
    if (gn < theta) ++out.negative_hits;
    // d/dg softplus(θ − g) = −σ(θ − g);  d/dg softplus(g − θ) = σ(g − θ).
    // goodness_gradient writes in place; ReLU gating is implicit because y = 0 where z ≤ 0
    // and every goodness gradient is proportional to y.
    goodness_gradient(yp, mode, -sigmoid(theta - gp) * inv_b, yp);
    goodness_gradient(yn, mode, sigmoid(gn - theta) * inv_b, yn);
  }
  out.loss = total * inv_b;

  out.weights = matmul_tn(x_pos, dz_pos);
  Tensor w_neg = matmul_tn(x_neg, dz_neg);
  for (std::size_t i = 0; i < out.weights.size(); ++i) out.weights[i] += w_neg[i];
  out.bias = column_sums(dz_pos);
  Tensor b_neg = column_sums(dz_neg);
  for (std::size_t i = 0; i < out.bias.size(); ++i) out.bias[i] += b_neg[i];
  return out;
}

double layer_local_update(DenseLayer& layer, const Tensor& x_pos, const Tensor& x_neg, double theta,
                          GoodnessMode mode) {
  LayerGradients g = layer_local_gradients(layer, x_pos, x_neg, theta, mode);
  apply_gradients(layer, g.weights, g.bias);
  return g.loss;
}

}  // namespace ffb
