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

#include <vector>

#include "ffbench/core/rng.hpp"
#include "ffbench/core/tensor.hpp"

namespace ffb {

/// Exact t-SNE settings. Momentum switches from initial to final at `momentum_switch`;
/// P is multiplied by `early_exaggeration` for the first `exaggeration_iterations`.
struct TsneConfig {
  double perplexity = 30.0;
  int iterations = 1000;
  double learning_rate = 200.0;
  double early_exaggeration = 12.0;
  int exaggeration_iterations = 250;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch = 250;
  /// Per-coordinate adaptive gains (delta-bar-delta); off gives plain momentum descent.
  bool use_gains = false;
  double min_gain = 0.01;
  double entropy_tolerance = 1e-5;
  int max_bisections = 50;
  /// Records the (unexaggerated) KL divergence after every iteration; costs one extra pass.
  bool record_kl = false;

  void validate(std::size_t n) const;
};

struct TsneResult {
  Tensor coords;            // [n × 2], centered
  std::vector<double> kl;   // per iteration when record_kl is set
};

/// Squared Euclidean distances between the rows of `points`.
Tensor pairwise_sq_distances(const Tensor& points);

struct Bandwidths {
  Tensor conditional;               // row i: p(j | i), zero diagonal
  std::vector<double> beta;         // 1 / (2σ²)
  std::vector<double> perplexity;   // achieved, per point
};

/// Per-point Gaussian precision by bisection until the row entropy is within `tolerance`
/// nats of log(perplexity).
Bandwidths calibrate_bandwidths(const Tensor& sq_distances, double perplexity, double tolerance = 1e-5,
                                int max_bisections = 50);

/// (P + Pᵀ) / 2n; symmetric and summing to one.
Tensor joint_probabilities(const Tensor& conditional);

/// KL(P ‖ Q) with Q the Student-t similarities of `coords`.
double kl_divergence(const Tensor& joint, const Tensor& coords);

/// Duplicate rows are separated by 1e-10 Gaussian jitter before calibration.
/// Throws ArgumentError when n < 3·perplexity.
TsneResult tsne(const Tensor& points, const TsneConfig& cfg, Rng& rng);

}  // namespace ffb
