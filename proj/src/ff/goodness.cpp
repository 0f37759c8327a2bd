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

#include "ffbench/ff/goodness.hpp"

#include <cmath>

#include "ffbench/error.hpp"

namespace ffb {

std::string to_string(GoodnessMode mode) {
  switch (mode) {
    case GoodnessMode::mean_sq: return "mean_sq";
    case GoodnessMode::sum_sq: return "sum_sq";
    case GoodnessMode::l2norm: return "l2norm";
  }
  return "?";
}

GoodnessMode goodness_mode_from_string(const std::string& s) {
  if (s == "mean_sq") return GoodnessMode::mean_sq;
  if (s == "sum_sq") return GoodnessMode::sum_sq;
  if (s == "l2norm") return GoodnessMode::l2norm;
  throw ArgumentError("unknown goodness mode '" + s + "'");
}

double goodness(std::span<const double> y, GoodnessMode mode) {
  if (y.empty()) throw ArgumentError("goodness of an empty activation vector");
  double sq = 0.0;
  for (double v : y) sq += v * v;
  switch (mode) {
    case GoodnessMode::mean_sq: return sq / static_cast<double>(y.size());
    case GoodnessMode::sum_sq: return sq;
    case GoodnessMode::l2norm: return std::sqrt(sq);
  }
  return sq;
}

void goodness_gradient(std::span<const double> y, GoodnessMode mode, double scale, std::span<double> out) {
  double factor = 0.0;
  switch (mode) {
    case GoodnessMode::mean_sq: factor = 2.0 / static_cast<double>(y.size()); break;
    case GoodnessMode::sum_sq: factor = 2.0; break;
    case GoodnessMode::l2norm: {
      double sq = 0.0;
      for (double v : y) sq += v * v;
      // The norm is not differentiable at 0; use the zero subgradient there.
      factor = sq > 0.0 ? 1.0 / std::sqrt(sq) : 0.0;
      break;
    }
  }
  for (std::size_t j = 0; j < y.size(); ++j) out[j] = scale * factor * y[j];
}

double softplus(double z) {
  if (z > 30.0) return z;
  return std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double layer_loss(double g_pos, double g_neg, double theta) {
  return softplus(theta - g_pos) + softplus(g_neg - theta);
}

}  // namespace ffb
