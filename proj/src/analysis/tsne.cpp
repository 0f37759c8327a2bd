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

#include "ffbench/analysis/tsne.hpp"

#include <cmath>
#include <limits>

#include "ffbench/core/linalg.hpp"
#include "ffbench/error.hpp"

namespace ffb {

void TsneConfig::validate(std::size_t n) const {
  if (!(perplexity > 0.0)) throw ArgumentError("perplexity must be positive");
  if (static_cast<double>(n) < 3.0 * perplexity) {
    throw ArgumentError("t-SNE needs at least 3·perplexity points, got " + std::to_string(n));
  }
  if (iterations < 0) throw ArgumentError("iterations must be non-negative");
  if (!(learning_rate > 0.0)) throw ArgumentError("learning_rate must be positive");
  if (max_bisections < 1) throw ArgumentError("max_bisections must be at least 1");
}

Tensor pairwise_sq_distances(const Tensor& points) {
  if (points.rank() != 2) throw ShapeError("points must be a matrix");
  const std::size_t n = points.rows();
  Tensor gram = matmul_nt(points, points);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = gram.at(i, i);
  Tensor d({n, n});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::max(0.0, sq[i] + sq[j] - 2.0 * gram.at(i, j));
      d.at(i, j) = v;
      d.at(j, i) = v;
    }
  }
  return d;
}

namespace {

// Fills row with p(j|i) for precision beta and returns its entropy in nats.
double conditional_row(std::span<const double> d, std::size_t self, double beta, std::span<double> row) {
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (j != self) dmin = std::min(dmin, d[j]);
  }
  double sum = 0.0, weighted = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (j == self) {
      row[j] = 0.0;
      continue;
    }
    const double shifted = d[j] - dmin;
    row[j] = std::exp(-beta * shifted);
    sum += row[j];
    weighted += shifted * row[j];
  }
  for (auto& v : row) v /= sum;
  return std::log(sum) + beta * weighted / sum;
}

bool has_duplicates(const Tensor& d) {
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = i + 1; j < d.cols(); ++j) {
      if (d.at(i, j) == 0.0) return true;
    }
  }
  return false;
}

}  // namespace

Bandwidths calibrate_bandwidths(const Tensor& sq_distances, double perplexity, double tolerance, int max_bisections) {
  const std::size_t n = sq_distances.rows();
  if (n < 2 || sq_distances.cols() != n) throw ShapeError("distance matrix must be square with n >= 2");
  const double target = std::log(perplexity);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Bandwidths out{Tensor({n, n}), std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    auto d = sq_distances.row(i);
    auto row = out.conditional.row(i);
    double beta = 1.0, lo = -kInf, hi = kInf;
    double h = conditional_row(d, i, beta, row);
    for (int it = 0; it < max_bisections && std::abs(h - target) > tolerance; ++it) {
      if (h > target) {
        lo = beta;
        beta = hi == kInf ? beta * 2.0 : 0.5 * (beta + hi);
      } else {
        hi = beta;
        beta = lo == -kInf ? beta * 0.5 : 0.5 * (beta + lo);
      }
      h = conditional_row(d, i, beta, row);
    }
    out.beta[i] = beta;
    out.perplexity[i] = std::exp(h);
  }
  return out;
}

Tensor joint_probabilities(const Tensor& conditional) {
  const std::size_t n = conditional.rows();
  Tensor p({n, n});
  const double scale = 1.0 / (2.0 * static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) p.at(i, j) = (conditional.at(i, j) + conditional.at(j, i)) * scale;
  }
  return p;
}

double kl_divergence(const Tensor& joint, const Tensor& coords) {
  const std::size_t n = coords.rows();
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = coords.at(i, 0) - coords.at(j, 0), dy = coords.at(i, 1) - coords.at(j, 1);
      z += 2.0 / (1.0 + dx * dx + dy * dy);
    }
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double p = joint.at(i, j);
      if (i == j || p <= 0.0) continue;
      const double dx = coords.at(i, 0) - coords.at(j, 0), dy = coords.at(i, 1) - coords.at(j, 1);
      const double q = 1.0 / ((1.0 + dx * dx + dy * dy) * z);
      kl += p * std::log(p / q);
    }
  }
  return kl;
}

TsneResult tsne(const Tensor& points, const TsneConfig& cfg, Rng& rng) {
  if (points.rank() != 2) throw ShapeError("points must be a matrix");
  const std::size_t n = points.rows();
  cfg.validate(n);

  Tensor d = pairwise_sq_distances(points);
  if (has_duplicates(d)) {
    Tensor jittered = points;
    Rng jitter = rng.split(1);
    for (auto& v : jittered.values()) v += 1e-10 * jitter.normal();
    d = pairwise_sq_distances(jittered);
  }
  const Tensor p = joint_probabilities(
      calibrate_bandwidths(d, cfg.perplexity, cfg.entropy_tolerance, cfg.max_bisections).conditional);

  TsneResult result;
  Tensor& y = result.coords;
  y = Tensor({n, 2});
  for (auto& v : y.values()) v = 1e-4 * rng.normal();
  Tensor update({n, 2});
  Tensor gains({n, 2}, 1.0);
  Tensor grad({n, 2});
  Tensor num({n, n});

  for (int it = 0; it < cfg.iterations; ++it) {
    const double exaggeration = it < cfg.exaggeration_iterations ? cfg.early_exaggeration : 1.0;
    const double momentum = it < cfg.momentum_switch ? cfg.initial_momentum : cfg.final_momentum;

    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dx = y.at(i, 0) - y.at(j, 0), dy = y.at(i, 1) - y.at(j, 1);
        const double q = 1.0 / (1.0 + dx * dx + dy * dy);
        num.at(i, j) = q;
        num.at(j, i) = q;
        z += 2.0 * q;
      }
    }
    grad.fill(0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double gx = 0.0, gy = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double w = num.at(i, j);
        const double coeff = (exaggeration * p.at(i, j) - w / z) * w;
        gx += coeff * (y.at(i, 0) - y.at(j, 0));
        gy += coeff * (y.at(i, 1) - y.at(j, 1));
      }
      grad.at(i, 0) = 4.0 * gx;
      grad.at(i, 1) = 4.0 * gy;
    }
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (cfg.use_gains) {
        const bool same_sign = (grad[k] > 0.0) == (update[k] > 0.0);
        gains[k] = std::max(cfg.min_gain, same_sign ? gains[k] * 0.8 : gains[k] + 0.2);
      }
      update[k] = momentum * update[k] - cfg.learning_rate * gains[k] * grad[k];
      y[k] += update[k];
    }
    for (std::size_t c = 0; c < 2; ++c) {
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) mean += y.at(i, c);
      mean /= static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) y.at(i, c) -= mean;
    }
    if (cfg.record_kl) result.kl.push_back(kl_divergence(p, y));
  }
  if (!y.all_finite()) throw Error("t-SNE diverged to non-finite coordinates");
  return result;
}

}  // namespace ffb
