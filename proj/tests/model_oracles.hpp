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

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "ffbench/bp/network.hpp"
#include "ffbench/ff/goodness.hpp"
#include "ffbench/ff/layer.hpp"
#include "oracles.hpp"

// Loop-based FF and BP losses plus finite-difference gradient checks built on them.
namespace oracle {

using ffb::GoodnessMode;
using ffb::Tensor;

inline double goodness(std::span<const double> y, GoodnessMode mode) {
  double s = 0.0;
  for (double v : y) s += v * v;
  switch (mode) {
    case GoodnessMode::mean_sq: return s / static_cast<double>(y.size());
    case GoodnessMode::sum_sq: return s;
    case GoodnessMode::l2norm: return std::sqrt(s);
  }
  return 0.0;
}

inline Tensor normalize_rows(const Tensor& m) {
  Tensor out = m;
  for (std::size_t r = 0; r < m.dim(0); ++r) {
    const auto row = m.row(r);
    const auto n = oracle::normalize({row.begin(), row.end()});
    std::copy(n.begin(), n.end(), out.row(r).begin());
  }
  return out;
}

// Batch-mean FF layer loss.
inline double layer_loss(const ffb::DenseLayer& layer, const Tensor& xp, const Tensor& xn, double theta,
                         GoodnessMode mode) {
  const Tensor yp = oracle::dense_relu(xp, layer.weights, layer.bias);
  const Tensor yn = oracle::dense_relu(xn, layer.weights, layer.bias);
  double total = 0.0;
  for (std::size_t r = 0; r < yp.dim(0); ++r) {
    total += oracle::softplus(theta - oracle::goodness(yp.row(r), mode)) + oracle::softplus(oracle::goodness(yn.row(r), mode) - theta);
  }
  return total / static_cast<double>(yp.dim(0));
}

inline ffb::DenseLayer random_layer(std::size_t in, std::size_t out, std::mt19937_64& gen) {
  return ffb::make_dense_layer(oracle::random_tensor({in, out}, gen, -0.6, 0.6), oracle::random_tensor({out}, gen, -0.2, 0.4));
}

// A threshold near the typical goodness of random_layer outputs, so neither softplus saturates.
inline double theta_for(GoodnessMode mode, std::size_t width) {
  switch (mode) {
    case GoodnessMode::mean_sq: return 0.6;
    case GoodnessMode::sum_sq: return 0.6 * static_cast<double>(width);
    case GoodnessMode::l2norm: return std::sqrt(0.6 * static_cast<double>(width));
  }
  return 1.0;
}

// Worst relative error of layer_local_gradients against 1e-6 central differences of layer_loss
// on a random 5→width layer with 4 positive and 4 negative rows.
inline double worst_ff_gradient_error(std::size_t width, GoodnessMode mode, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto layer = oracle::random_layer(5, width, gen);
  const Tensor xp = oracle::random_tensor({4, 5}, gen, 0.0, 1.0);
  const Tensor xn = oracle::random_tensor({4, 5}, gen, 0.0, 1.0);
  const double theta = oracle::theta_for(mode, width);
  const ffb::LayerGradients g = ffb::layer_local_gradients(layer, xp, xn, theta, mode);
  auto f = [&] { return oracle::layer_loss(layer, xp, xn, theta, mode); };
  double worst = 0.0;
  for (std::size_t i = 0; i < layer.weights.size(); ++i) {
    worst = std::max(worst, oracle::rel_err(g.weights[i], oracle::central_diff(f, layer.weights[i], 1e-6)));
  }
  for (std::size_t i = 0; i < layer.bias.size(); ++i) {
    worst = std::max(worst, oracle::rel_err(g.bias[i], oracle::central_diff(f, layer.bias[i], 1e-6)));
  }
  return worst;
}

inline std::vector<Tensor> bp_forward(const ffb::BPNetwork& net, const Tensor& x) {
  std::vector<Tensor> acts;
  Tensor in = x;
  for (const auto& layer : net.backbone.layers) {
    acts.push_back(oracle::dense_relu(in, layer.weights, layer.bias));
    in = net.backbone.normalize_between ? oracle::normalize_rows(acts.back()) : acts.back();
  }
  return acts;
}

inline double bp_loss(const ffb::BPNetwork& net, const ffb::BPBatch& b) {
  if (net.loss == ffb::BPLoss::cross_entropy) {
    const Tensor h = oracle::bp_forward(net, b.inputs).back();
    Tensor logits = oracle::matmul(h, net.head->weights);
    double total = 0.0;
    for (std::size_t r = 0; r < logits.dim(0); ++r) {
      double z = 0.0;
      for (std::size_t c = 0; c < logits.dim(1); ++c) z += std::exp(logits.at(r, c) + net.head->bias[c]);
      const auto y = static_cast<std::size_t>(b.labels[r]);
      total += std::log(z) - (logits.at(r, y) + net.head->bias[y]);
    }
    return total / static_cast<double>(logits.dim(0));
  }
  const auto pos = oracle::bp_forward(net, b.inputs);
  const auto neg = oracle::bp_forward(net, b.negatives);
  const double theta = net.backbone.theta;
  double total = 0.0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (net.loss == ffb::BPLoss::goodness_last && i + 1 != pos.size()) continue;
    double layer_total = 0.0;
    for (std::size_t r = 0; r < pos[i].dim(0); ++r) {
      layer_total += oracle::softplus(theta - oracle::goodness(pos[i].row(r), net.backbone.mode)) +
                     oracle::softplus(oracle::goodness(neg[i].row(r), net.backbone.mode) - theta);
    }
    total += layer_total / static_cast<double>(pos[i].dim(0));
  }
  return total;
}

inline ffb::BPNetwork random_bp(std::size_t in, const std::vector<std::size_t>& widths, ffb::BPLoss loss,
                                std::uint64_t seed) {
  ffb::Rng r(seed);
  auto net = ffb::make_bp_network(in, widths, 3, loss, r, 0.4, GoodnessMode::mean_sq);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> b(-0.1, 0.3);
  for (auto& layer : net.backbone.layers) {
    for (auto& v : layer.bias.values()) v = b(gen);
  }
  return net;
}

inline ffb::BPBatch random_bp_batch(std::size_t rows, std::size_t in, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  ffb::BPBatch b;
  b.inputs = oracle::random_tensor({rows, in}, gen, 0.0, 1.0);
  b.negatives = oracle::random_tensor({rows, in}, gen, 0.0, 1.0);
  for (std::size_t r = 0; r < rows; ++r) b.labels.push_back(static_cast<int>(r % 3));
  return b;
}

// End-to-end gradients are small next to an O(1) loss, so the plain 1e-6 central difference
// is dominated by roundoff; the five-point stencil at 1e-4 is accurate to ~1e-12.
inline double worst_bp_gradient_error(ffb::BPNetwork& net, const ffb::BPBatch& batch) {
  const ffb::BPGradients g = ffb::bp_gradients(net, batch);
  const auto loss = [&] { return oracle::bp_loss(net, batch); };
  auto fd = [&](double& p) { return oracle::five_point_diff(loss, p, 1e-4); };
  double worst = 0.0;
  for (std::size_t k = 0; k < net.backbone.layers.size(); ++k) {
    auto& layer = net.backbone.layers[k];
    for (std::size_t i = 0; i < layer.weights.size(); ++i) {
      worst = std::max(worst, oracle::rel_err(g.weights[k][i], fd(layer.weights[i])));
    }
    for (std::size_t i = 0; i < layer.bias.size(); ++i) worst = std::max(worst, oracle::rel_err(g.bias[k][i], fd(layer.bias[i])));
  }
  if (net.head) {
    for (std::size_t i = 0; i < net.head->weights.size(); ++i) {
      worst = std::max(worst, oracle::rel_err(g.head_weights[i], fd(net.head->weights[i])));
    }
    for (std::size_t i = 0; i < net.head->bias.size(); ++i) {
      worst = std::max(worst, oracle::rel_err(g.head_bias[i], fd(net.head->bias[i])));
    }
  }
  return worst;
}

}  // namespace oracle
