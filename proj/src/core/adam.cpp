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

#include "ffbench/core/adam.hpp"

#include <cmath>

#include "ffbench/error.hpp"

namespace ffb {

AdamState AdamState::for_shape(const Shape& shape, double learning_rate) {
  AdamState s;
  s.first_moment = Tensor(shape);
  s.second_moment = Tensor(shape);
  s.learning_rate = learning_rate;
  return s;
}

void adam_step(Tensor& params, const Tensor& grads, AdamState& state) {
  if (params.shape() != grads.shape() || params.shape() != state.first_moment.shape() ||
      params.shape() != state.second_moment.shape()) {
    throw ShapeError("adam_step: params " + shape_string(params.shape()) + ", grads " +
                     shape_string(grads.shape()) + ", moments " +
                     shape_string(state.first_moment.shape()) + " disagree");
  }
  ++state.step_count;
  const double t = static_cast<double>(state.step_count);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  const double b1 = state.beta1;
  const double b2 = state.beta2;

  double* p = params.data();
  const double* g = grads.data();
  double* m = state.first_moment.data();
  double* v = state.second_moment.data();
  const std::size_t n = params.size();
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = b1 * m[i] + (1.0 - b1) * g[i];
    v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
    const double m_hat = m[i] / c1;
    const double v_hat = v[i] / c2;
    p[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
}

}  // namespace ffb
