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

#include <span>
#include <string>

namespace ffb {

/// mean_sq: Σy²/d, sum_sq: Σy², l2norm: ‖y‖₂.
enum class GoodnessMode { mean_sq, sum_sq, l2norm };

std::string to_string(GoodnessMode mode);
GoodnessMode goodness_mode_from_string(const std::string& s);

inline constexpr double kDefaultTheta = 2.0;

double goodness(std::span<const double> activations, GoodnessMode mode);

/// out[j] = scale · ∂goodness/∂y_j.
void goodness_gradient(std::span<const double> activations, GoodnessMode mode, double scale,
                       std::span<double> out);

/// log(1 + eᶻ), returning z directly for z > 30.
double softplus(double z);
double sigmoid(double z);

/// σ(goodness − θ): probability that a sample is positive.
inline double p_positive(double g, double theta) { return sigmoid(g - theta); }

/// softplus(θ − g_pos) + softplus(g_neg − θ).
double layer_loss(double g_pos, double g_neg, double theta);

}  // namespace ffb
