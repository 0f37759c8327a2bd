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

#include "ffbench/bp/network.hpp"

#include <algorithm>
#include <cmath>

#include "ffbench/core/linalg.hpp"
#include "ffbench/error.hpp"

namespace ffb {

std::string to_string(BPLoss loss) {
  switch (loss) {
    case BPLoss::cross_entropy: return "cross_entropy";
    case BPLoss::goodness_last: return "goodness_last";
    case BPLoss::goodness_all: return "goodness_all";
  }
  return "?";
}

BPLoss bp_loss_for(Trainer trainer) {
  switch (trainer) {
    case Trainer::bp_ce: return BPLoss::cross_entropy;
    case Trainer::bp_goodness_last: return BPLoss::goodness_last;
    case Trainer::bp_goodness_all: return BPLoss::goodness_all;
    default: throw ArgumentError("trainer " + to_string(trainer) + " is not a backprop trainer");
  }
}

Trainer trainer_for(BPLoss loss) {
  switch (loss) {
    case BPLoss::cross_entropy: return Trainer::bp_ce;
    case BPLoss::goodness_last: return Trainer::bp_goodness_last;
    case BPLoss::goodness_all: return Trainer::bp_goodness_all;
  }
  return Trainer::bp_ce;
}

void BPNetwork::set_learning_rate(double lr) {
  backbone.set_learning_rate(lr);
  if (head) head->set_learning_rate(lr);
}

bool BPNetwork::finite() const { return backbone.finite() && (!head || head->finite()); }

void BPNetwork::validate() const {
  backbone.validate();
  if ((loss == BPLoss::cross_entropy) != head.has_value()) {
    throw ArgumentError("a head is required for cross-entropy and only for cross-entropy");
  }
  if (head && head->fan_in() != backbone.layers.back().fan_out()) {
    throw ShapeError("head fan_in does not match last layer width");
  }
}

BPNetwork make_bp_network(std::size_t input_dim, const std::vector<std::size_t>& widths, int num_labels,
                          BPLoss loss, Rng& rng, double theta, GoodnessMode mode, double learning_rate,
                          bool normalize_between) {
  BPNetwork net;
  net.backbone.layers = init_layers(input_dim, widths, rng, learning_rate);
  net.backbone.theta = theta;
  net.backbone.mode = mode;
  net.backbone.normalize_between = normalize_between;
  net.loss = loss;
  if (loss == BPLoss::cross_entropy) {
    if (num_labels < 2) throw ArgumentError("cross-entropy head needs at least 2 labels");
    net.head = make_dense_layer(widths.back(), static_cast<std::size_t>(num_labels), rng, learning_rate);
  }
  net.validate();
  return net;
}

Checkpoint to_checkpoint(const BPNetwork& net) {
  return Checkpoint{trainer_for(net.loss), net.backbone, net.head};
}

BPNetwork from_checkpoint(const Checkpoint& ckpt) {
  BPNetwork net;
  net.loss = bp_loss_for(ckpt.trainer);
  net.backbone = ckpt.backbone;
  net.head = ckpt.head;
  net.validate();
  return net;
}

BPForward bp_forward(const BPNetwork& net, const Tensor& batch) {
  BPForward f;
  const auto& layers = net.backbone.layers;
  Tensor input = batch;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    Tensor y = layer_forward(layers[i], input);
    f.goodness.push_back(row_goodness(y, net.backbone.mode));
    Tensor next = i + 1 < layers.size() ? next_layer_input(net.backbone, y) : Tensor();
    f.inputs.push_back(std::move(input));
    f.activations.push_back(std::move(y));
    input = std::move(next);
  }
  if (net.head) f.logits = layer_preactivation(*net.head, f.activations.back());
  return f;
}

Tensor softmax_rows(const Tensor& logits) {
  Tensor p = logits;
  for (std::size_t r = 0; r < p.rows(); ++r) {
    auto row = p.row(r);
    const double mx = *std::max_element(row.begin(), row.end());
    double sum = 0.0;
    for (auto& v : row) sum += (v = std::exp(v - mx));
    for (auto& v : row) v /= sum;
  }
  return p;
}

double cross_entropy(const Tensor& logits, const std::vector<int>& labels) {
  if (labels.size() != logits.rows()) throw ShapeError("label count does not match logits rows");
  double total = 0.0;
  for (std::size_t r = 0; r < logits.rows(); ++r) {
    auto row = logits.row(r);
    const int y = labels[r];
    if (y < 0 || static_cast<std::size_t>(y) >= row.size()) {
      throw ArgumentError("label " + std::to_string(y) + " out of range for " + std::to_string(row.size()) +
                          " logits");
    }
    const double mx = *std::max_element(row.begin(), row.end());
    double sum = 0.0;
    for (double v : row) sum += std::exp(v - mx);
    total += std::log(sum) + mx - row[static_cast<std::size_t>(y)];
  }
  return total / static_cast<double>(logits.rows());
}

namespace {

bool layer_has_loss(const BPNetwork& net, std::size_t layer) {
  if (net.loss == BPLoss::goodness_all) return true;
  if (net.loss == BPLoss::goodness_last) return layer + 1 == net.backbone.layers.size();
  return false;
}

double goodness_loss(const BPNetwork& net, const BPForward& pos, const BPForward& neg) {
  const double theta = net.backbone.theta;
  double total = 0.0;
  for (std::size_t i = 0; i < net.backbone.layers.size(); ++i) {
    if (!layer_has_loss(net, i)) continue;
    const auto& gp = pos.goodness[i];
    const auto& gn = neg.goodness[i];
    double layer_total = 0.0;
    for (std::size_t r = 0; r < gp.size(); ++r) layer_total += layer_loss(gp[r], gn[r], theta);
    total += layer_total / static_cast<double>(gp.size());
  }
  return total;
}

void check_batch(const BPNetwork& net, const BPBatch& batch) {
  if (batch.inputs.rank() != 2 || batch.inputs.cols() != net.backbone.input_dim()) {
    throw ShapeError("batch " + shape_string(batch.inputs.shape()) + " does not match network input " +
                     std::to_string(net.backbone.input_dim()));
  }
  if (net.loss == BPLoss::cross_entropy) {
    if (batch.labels.size() != batch.inputs.rows()) throw ShapeError("one label per row required");
  } else if (batch.negatives.shape() != batch.inputs.shape()) {
    throw ShapeError("goodness losses need negatives shaped like the positives");
  }
}

// Adds ∂L/∂y from a layer's own goodness term: sign −1 for positives, +1 for negatives.
void add_goodness_term(const BPNetwork& net, const BPForward& f, std::size_t layer, double sign, Tensor& dy) {
  const Tensor& y = f.activations[layer];
  const double theta = net.backbone.theta;
  const double inv_b = 1.0 / static_cast<double>(y.rows());
  std::vector<double> tmp(y.cols());
  for (std::size_t r = 0; r < y.rows(); ++r) {
    const double g = f.goodness[layer][r];
    const double coeff = sign < 0 ? -sigmoid(theta - g) * inv_b : sigmoid(g - theta) * inv_b;
    goodness_gradient(y.row(r), net.backbone.mode, coeff, tmp);
    auto out = dy.row(r);
    for (std::size_t j = 0; j < tmp.size(); ++j) out[j] += tmp[j];
  }
}

void add_into(Tensor& acc, const Tensor& t) {
  if (acc.empty()) {
    acc = t;
    return;
  }
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t[i];
}

// Backpropagates ∂L/∂(last activation) plus any per-layer goodness terms through the stack.
void backward(const BPNetwork& net, const BPForward& f, Tensor dy_last, double goodness_sign, BPGradients& g) {
  const auto& layers = net.backbone.layers;
  Tensor dy = std::move(dy_last);
  for (std::size_t k = layers.size(); k-- > 0;) {
    if (dy.empty()) dy = Tensor(f.activations[k].shape());
    if (layer_has_loss(net, k)) add_goodness_term(net, f, k, goodness_sign, dy);
    // ReLU gate.
    const Tensor& y = f.activations[k];
    for (std::size_t i = 0; i < dy.size(); ++i) {
      if (!(y[i] > 0.0)) dy[i] = 0.0;
    }
    add_into(g.weights[k], matmul_tn(f.inputs[k], dy));
    add_into(g.bias[k], column_sums(dy));
    if (k == 0) break;
    Tensor dx = matmul_nt(dy, layers[k].weights);
    dy = net.backbone.normalize_between ? normalize_backward(f.activations[k - 1], dx, kNormEps) : std::move(dx);
  }
}

}  // namespace

Tensor normalize_backward(const Tensor& y, const Tensor& grad_out, double eps) {
  if (y.shape() != grad_out.shape()) throw ShapeError("normalize_backward: shape mismatch");
  Tensor dy(y.shape());
  for (std::size_t r = 0; r < y.rows(); ++r) {
    auto yr = y.row(r);
    auto gr = grad_out.row(r);
    auto out = dy.row(r);
    const double norm = l2_norm(yr);
    if (norm > eps) {
      double dot = 0.0;
      for (std::size_t j = 0; j < yr.size(); ++j) dot += yr[j] * gr[j];
      dot /= norm;  // n·g
      for (std::size_t j = 0; j < yr.size(); ++j) out[j] = (gr[j] - (yr[j] / norm) * dot) / norm;
    } else {
      for (std::size_t j = 0; j < yr.size(); ++j) out[j] = gr[j] / eps;
    }
  }
  return dy;
}

double bp_loss(const BPNetwork& net, const BPBatch& batch) {
  check_batch(net, batch);
  if (net.loss == BPLoss::cross_entropy) return cross_entropy(bp_forward(net, batch.inputs).logits, batch.labels);
  return goodness_loss(net, bp_forward(net, batch.inputs), bp_forward(net, batch.negatives));
}

BPGradients bp_gradients(const BPNetwork& net, const BPBatch& batch) {
  check_batch(net, batch);
  const std::size_t depth = net.backbone.layers.size();
  BPGradients g;
  g.weights.resize(depth);
  g.bias.resize(depth);

  if (net.loss == BPLoss::cross_entropy) {
    BPForward f = bp_forward(net, batch.inputs);
    g.loss = cross_entropy(f.logits, batch.labels);
    for (std::size_t r = 0; r < f.logits.rows(); ++r) {
      auto row = f.logits.row(r);
      const auto best = std::max_element(row.begin(), row.end()) - row.begin();
      g.correct += best == batch.labels[r] ? 1 : 0;
    }
    Tensor dlogits = softmax_rows(f.logits);
    const double inv_b = 1.0 / static_cast<double>(dlogits.rows());
    for (std::size_t r = 0; r < dlogits.rows(); ++r) {
      auto row = dlogits.row(r);
      row[static_cast<std::size_t>(batch.labels[r])] -= 1.0;
      for (auto& v : row) v *= inv_b;
    }
    g.head_weights = matmul_tn(f.activations.back(), dlogits);
    g.head_bias = column_sums(dlogits);
    backward(net, f, matmul_nt(dlogits, net.head->weights), 0.0, g);
    return g;
  }

  BPForward pos = bp_forward(net, batch.inputs);
  BPForward neg = bp_forward(net, batch.negatives);
  g.loss = goodness_loss(net, pos, neg);
  const double theta = net.backbone.theta;
  for (std::size_t r = 0; r < batch.inputs.rows(); ++r) {
    g.correct += pos.goodness.back()[r] > theta ? 1 : 0;
    g.correct += neg.goodness.back()[r] < theta ? 1 : 0;
  }
  backward(net, pos, Tensor(), -1.0, g);
  backward(net, neg, Tensor(), +1.0, g);
  return g;
}

void apply_bp_gradients(BPNetwork& net, const BPGradients& g) {
  for (std::size_t i = 0; i < net.backbone.layers.size(); ++i) {
    apply_gradients(net.backbone.layers[i], g.weights[i], g.bias[i]);
  }
  if (net.head) apply_gradients(*net.head, g.head_weights, g.head_bias);
}

double bp_backward_and_step(BPNetwork& net, const BPBatch& batch) {
  BPGradients g = bp_gradients(net, batch);
  apply_bp_gradients(net, g);
  return g.loss;
}

}  // namespace ffb
