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

#include "ffbench/core/linalg.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "ffbench/error.hpp"

namespace ffb {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat>;
using MutMap = Eigen::Map<RowMat>;

ConstMap view(const Tensor& t) {
  return ConstMap(t.data(), static_cast<Eigen::Index>(t.rows()), static_cast<Eigen::Index>(t.cols()));
}

MutMap view(Tensor& t) {
  return MutMap(t.data(), static_cast<Eigen::Index>(t.rows()), static_cast<Eigen::Index>(t.cols()));
}

void require(bool ok, const char* op, const Tensor& a, const Tensor& b) {
  if (!ok) {
    throw ShapeError(std::string(op) + ": incompatible shapes " + shape_string(a.shape()) +
                     " and " + shape_string(b.shape()));
  }
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require(a.rank() == 2 && b.rank() == 2 && a.cols() == b.rows(), "matmul", a, b);
  Tensor out({a.rows(), b.cols()});
  view(out).noalias() = view(a) * view(b);
  return out;
}

Tensor matmul_tn(const Tensor& a, const Tensor& b) {
  require(a.rank() == 2 && b.rank() == 2 && a.rows() == b.rows(), "matmul_tn", a, b);
  Tensor out({a.cols(), b.cols()});
  view(out).noalias() = view(a).transpose() * view(b);
  return out;
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
  require(a.rank() == 2 && b.rank() == 2 && a.cols() == b.cols(), "matmul_nt", a, b);
  Tensor out({a.rows(), b.rows()});
  view(out).noalias() = view(a) * view(b).transpose();
  return out;
}

void add_row_vector(Tensor& m, const Tensor& bias) {
  if (bias.size() != m.cols()) throw ShapeError("bias length does not match matrix columns");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += bias[c];
  }
}

Tensor column_sums(const Tensor& m) {
  Tensor out({m.cols()});
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) out[c] += row[c];
  }
  return out;
}

void relu_inplace(Tensor& m) {
  for (auto& v : m.values()) v = v > 0.0 ? v : 0.0;
}

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void l2_normalize_inplace(std::span<double> v, double eps) {
  const double scale = 1.0 / std::max(l2_norm(v), eps);
  for (auto& x : v) x *= scale;
}

Tensor l2_normalize(const Tensor& v, double eps) {
  if (v.rank() != 1) throw ShapeError("l2_normalize expects a vector, got " + shape_string(v.shape()));
  Tensor out = v;
  l2_normalize_inplace(out.values(), eps);
  return out;
}

Tensor l2_normalize_rows(const Tensor& m, double eps) {
  Tensor out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) l2_normalize_inplace(out.row(r), eps);
  return out;
}

}  // namespace ffb
