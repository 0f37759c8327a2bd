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

#include "ffbench/core/tensor.hpp"

namespace ffb {

inline constexpr double kNormEps = 1e-8;

/// a[m×k] · b[k×n]. Backed by Eigen's single-threaded GEMM.
Tensor matmul(const Tensor& a, const Tensor& b);
/// aᵀ · b for a[k×m], b[k×n].
Tensor matmul_tn(const Tensor& a, const Tensor& b);
/// a · bᵀ for a[m×k], b[n×k].
Tensor matmul_nt(const Tensor& a, const Tensor& b);

/// Adds `bias` to every row of `m`.
void add_row_vector(Tensor& m, const Tensor& bias);
/// Column sums of a matrix, as a vector.
Tensor column_sums(const Tensor& m);
void relu_inplace(Tensor& m);

double l2_norm(std::span<const double> v);
/// v / max(‖v‖₂, eps).
Tensor l2_normalize(const Tensor& v, double eps = kNormEps);
void l2_normalize_inplace(std::span<double> v, double eps = kNormEps);
/// Row-wise l2_normalize of a matrix.
Tensor l2_normalize_rows(const Tensor& m, double eps = kNormEps);

}  // namespace ffb
