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

#include <optional>
#include <string>
#include <vector>

#include "ffbench/core/rng.hpp"
#include "ffbench/core/tensor.hpp"
#include "ffbench/ff/checkpoint.hpp"
#include "ffbench/ff/network.hpp"

namespace ffb {

enum class BPLoss { cross_entropy, goodness_last, goodness_all };

std::string to_string(BPLoss loss);
BPLoss bp_loss_for(Trainer trainer);
Trainer trainer_for(BPLoss loss);

/// The forward-forward architecture trained end to end. Cross-entropy adds a linear head
/// on the last layer's raw activations; the goodness variants use the FF layer loss on the
/// last layer or on every layer.
struct BPNetwork {
  FFNetwork backbone;
  std::optional<DenseLayer> head;  // present iff loss == cross_entropy; no ReLU
  BPLoss loss = BPLoss::cross_entropy;

  void set_learning_rate(double lr);
  bool finite() const;
  void validate() const;
};

/// Backbone from init_layers (identical to the FF network for the same rng state), then the
/// head for cross-entropy.
BPNetwork make_bp_network(std::size_t input_dim, const std::vector<std::size_t>& widths, int num_labels,
                          BPLoss loss, Rng& rng, double theta = kDefaultTheta,
                          GoodnessMode mode = GoodnessMode::mean_sq, double learning_rate = kDefaultLearningRate,
                          bool normalize_between = true);

Checkpoint to_checkpoint(const BPNetwork& net);
BPNetwork from_checkpoint(const Checkpoint& ckpt);

/// Cross-entropy rows carry no embedded label and use `labels`; goodness rows are
/// label-embedded positives in `inputs` with matching negatives.
struct BPBatch {
  Tensor inputs;
  std::vector<int> labels;
  Tensor negatives;
};

/// Everything the backward pass needs from one forward pass.
struct BPForward {
  std::vector<Tensor> inputs;       // what each layer consumed
  std::vector<Tensor> activations;  // raw post-ReLU outputs
  Tensor logits;                    // cross-entropy only
  std::vector<std::vector<double>> goodness;  // per layer, per row
};

BPForward bp_forward(const BPNetwork& net, const Tensor& batch);

Tensor softmax_rows(const Tensor& logits);
/// Mean softmax cross-entropy.
double cross_entropy(const Tensor& logits, const std::vector<int>& labels);

/// Loss of a batch for the network's variant. goodness_all sums the per-layer losses.
double bp_loss(const BPNetwork& net, const BPBatch& batch);

struct BPGradients {
  std::vector<Tensor> weights;
  std::vector<Tensor> bias;
  Tensor head_weights;
  Tensor head_bias;
  double loss = 0.0;
  /// Head argmax hits (cross-entropy) or rows on the right side of θ in the last layer.
  std::size_t correct = 0;
};

/// Full manual backward pass, including the Jacobian of every inter-layer normalization.
BPGradients bp_gradients(const BPNetwork& net, const BPBatch& batch);

/// One Adam step on every parameter.
void apply_bp_gradients(BPNetwork& net, const BPGradients& g);
/// Backward pass plus one Adam step on every parameter; returns the pre-step loss.
double bp_backward_and_step(BPNetwork& net, const BPBatch& batch);

/// Gradient of y ↦ y / max(‖y‖, eps) applied row-wise: maps ∂L/∂n to ∂L/∂y.
Tensor normalize_backward(const Tensor& y, const Tensor& grad_out, double eps);

}  // namespace ffb
