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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "ffbench/core/adam.hpp"
#include "ffbench/core/linalg.hpp"
#include "ffbench/core/rng.hpp"
#include "ffbench/core/tensor.hpp"
#include "ffbench/error.hpp"
#include "oracles.hpp"

using namespace ffb;

TEST(Tensor, ShapeInvariants) {
  Tensor t({2, 3}, 1.5);
  EXPECT_EQ(t.size(), 6u);
  EXPECT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.cols(), 3u);
  EXPECT_THROW(Tensor({2, 0}), ShapeError);
  EXPECT_THROW(Tensor({2, 2}, std::vector<double>(3)), ShapeError);
  EXPECT_THROW(t.reshaped({4}), ShapeError);
  EXPECT_EQ(t.reshaped({3, 2}).shape(), (Shape{3, 2}));
}

TEST(Tensor, GatherRows) {
  const Tensor m = Tensor::matrix({{1, 2}, {3, 4}, {5, 6}});
  const std::vector<std::size_t> idx{2, 0};
  EXPECT_EQ(gather_rows(m, idx), Tensor::matrix({{5, 6}, {1, 2}}));
}

TEST(Matmul, IdentityAndHandArithmetic) {
  const Tensor i3 = Tensor::matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const Tensor b = Tensor::matrix({{1, 2}, {3, 4}, {5, 6}});
  EXPECT_EQ(matmul(i3, b), b);
  EXPECT_EQ(matmul(Tensor::matrix({{1, 2}, {3, 4}}), Tensor::matrix({{0}, {1}})), Tensor::matrix({{2}, {4}}));
}

TEST(Matmul, MatchesTripleLoopOracle) {
  std::mt19937_64 gen(7);
  const Tensor a = oracle::random_tensor({5, 7}, gen);
  const Tensor b = oracle::random_tensor({7, 3}, gen);
  const Tensor got = matmul(a, b);
  const Tensor want = oracle::matmul(a, b);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
}

TEST(Matmul, TransposedVariantsMatchOracle) {
  std::mt19937_64 gen(8);
  const Tensor a = oracle::random_tensor({6, 4}, gen);
  const Tensor b = oracle::random_tensor({6, 5}, gen);
  const Tensor c = oracle::random_tensor({3, 4}, gen);
  const Tensor tn = matmul_tn(a, b);
  const Tensor tn_want = oracle::matmul(oracle::transpose(a), b);
  for (std::size_t i = 0; i < tn.size(); ++i) EXPECT_NEAR(tn[i], tn_want[i], 1e-12);
  const Tensor nt = matmul_nt(a, c);
  const Tensor nt_want = oracle::matmul(a, oracle::transpose(c));
  for (std::size_t i = 0; i < nt.size(); ++i) EXPECT_NEAR(nt[i], nt_want[i], 1e-12);
}

TEST(Matmul, DimensionMismatchThrows) {
  EXPECT_THROW(matmul(Tensor({2, 3}), Tensor({2, 3})), ShapeError);
  EXPECT_THROW(matmul_tn(Tensor({2, 3}), Tensor({3, 3})), ShapeError);
  EXPECT_THROW(matmul_nt(Tensor({2, 3}), Tensor({3, 2})), ShapeError);
}

TEST(Matmul, Associativity) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor a = oracle::random_tensor({3, 4}, gen);
    const Tensor b = oracle::random_tensor({4, 5}, gen);
    const Tensor c = oracle::random_tensor({5, 2}, gen);
    const Tensor l = matmul(matmul(a, b), c);
    const Tensor r = matmul(a, matmul(b, c));
    for (std::size_t i = 0; i < l.size(); ++i) EXPECT_NEAR(l[i], r[i], 1e-9);
  }
}

TEST(Normalize, ThreeFourFive) {
  const Tensor n = l2_normalize(Tensor::vector({3, 4}));
  EXPECT_DOUBLE_EQ(n[0], 0.6);
  EXPECT_DOUBLE_EQ(n[1], 0.8);
}

TEST(Normalize, ZeroVectorStaysZero) {
  EXPECT_EQ(l2_normalize(Tensor::vector({0, 0, 0}), 1e-8), Tensor::vector({0, 0, 0}));
}

TEST(Normalize, RejectsNonVectors) { EXPECT_THROW(l2_normalize(Tensor({2, 2})), ShapeError); }

TEST(Normalize, ScaleInvarianceAndIdempotence) {
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int trial = 0; trial < 200; ++trial) {
    const Tensor v = oracle::random_tensor({9}, gen);
    const double c = scale(gen);
    Tensor cv = v;
    for (auto& x : cv.values()) x *= c;
    const Tensor n = l2_normalize(v);
    const Tensor nc = l2_normalize(cv);
    const Tensor nn = l2_normalize(n);
    EXPECT_NEAR(l2_norm(n.values()), 1.0, 1e-6);
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_NEAR(n[i], nc[i], 1e-9);
      EXPECT_NEAR(n[i], nn[i], 1e-9);
    }
  }
}

TEST(Normalize, RowsMatchOracle) {
  std::mt19937_64 gen(11);
  Tensor m = oracle::random_tensor({4, 6}, gen);
  for (std::size_t j = 0; j < 6; ++j) m.at(2, j) = 0.0;
  const Tensor got = l2_normalize_rows(m);
  for (std::size_t r = 0; r < 4; ++r) {
    const auto row = m.row(r);
    const auto want = oracle::normalize(std::vector<double>(row.begin(), row.end()));
    for (std::size_t j = 0; j < 6; ++j) EXPECT_NEAR(got.at(r, j), want[j], 1e-15);
  }
}

TEST(Adam, ZeroGradientFreshStateIsFixedPoint) {
  Tensor p = Tensor::vector({1.0, -2.0, 3.5});
  const Tensor before = p;
  AdamState s = AdamState::for_shape(p.shape());
  adam_step(p, Tensor({3}), s);
  EXPECT_EQ(p, before);
  EXPECT_EQ(s.step_count, 1u);
}

TEST(Adam, FirstStepMagnitudeEqualsLearningRate) {
  Tensor p = Tensor::vector({0.0});
  AdamState s = AdamState::for_shape(p.shape(), 1e-4);
  adam_step(p, Tensor::vector({1.0}), s);
  // m̂ = 1, v̂ = 1 → Δ = lr / (1 + eps).
  EXPECT_NEAR(p[0], -1e-4 / (1.0 + 1e-8), 1e-18);
}

TEST(Adam, MatchesScalarReferenceTrace) {
  std::mt19937_64 gen(12);
  std::normal_distribution<double> g(0.0, 1.0);
  Tensor p = Tensor::vector({0.3, -0.7});
  AdamState s = AdamState::for_shape(p.shape(), 1e-3);
  oracle::ScalarAdam r0{1e-3}, r1{1e-3};
  double q0 = 0.3, q1 = -0.7;
  for (int step = 0; step < 50; ++step) {
    const double g0 = g(gen), g1 = g(gen);
    adam_step(p, Tensor::vector({g0, g1}), s);
    q0 = r0.step(q0, g0);
    q1 = r1.step(q1, g1);
    EXPECT_NEAR(p[0], q0, 1e-14);
    EXPECT_NEAR(p[1], q1, 1e-14);
    EXPECT_EQ(s.step_count, static_cast<std::uint64_t>(step + 1));
  }
}

TEST(Adam, ShapeMismatchThrows) {
  Tensor p({2});
  AdamState s = AdamState::for_shape(p.shape());
  EXPECT_THROW(adam_step(p, Tensor({3}), s), ShapeError);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 10000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, KnownSplitMixValues) {
  // SplitMix64 reference outputs for seed 0 (Vigna's splitmix64.c).
  Rng r(0);
  EXPECT_EQ(r.next_u64(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(r.next_u64(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(r.next_u64(), 0x06c45d188009454fULL);
}

TEST(Rng, SplitStreamsAreIndependentOfParentCounter) {
  Rng a(5);
  const Rng s1 = a.split(3);
  a.next_u64();
  const Rng s2 = a.split(3);
  Rng c1 = s1, c2 = s2;
  EXPECT_EQ(c1.next_u64(), c2.next_u64());
  Rng other = Rng(5).split(4);
  Rng c3 = s1;
  EXPECT_NE(c3.next_u64(), other.next_u64());
}

TEST(Rng, UniformIntIsUnbiased) {
  Rng r(13);
  constexpr int kN = 7, kDraws = 70000;
  std::vector<int> counts(kN, 0);
  for (int i = 0; i < kDraws; ++i) {
    const auto v = r.uniform_int(kN);
    ASSERT_LT(v, static_cast<std::uint64_t>(kN));
    ++counts[v];
  }
  double chi2 = 0.0;
  const double expected = static_cast<double>(kDraws) / kN;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 6 degrees of freedom, p = 0.001 critical value.
  EXPECT_LT(chi2, 22.458);
}

TEST(Rng, UniformInUnitInterval) {
  Rng r(14);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.005);
}

TEST(Rng, NormalMoments) {
  Rng r(15);
  double s = 0.0, s2 = 0.0;
  constexpr int kN = 200000;
  for (int i = 0; i < kN; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / kN, 0.0, 0.01);
  EXPECT_NEAR(s2 / kN, 1.0, 0.02);
}

TEST(Rng, PermutationIsAPermutation) {
  Rng r(16);
  auto p = r.permutation(100);
  std::sort(p.begin(), p.end());
  for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(p[i], i);
}

TEST(Rng, ShuffleFirstPositionUniform) {
  Rng r(17);
  std::vector<int> counts(5, 0);
  for (int t = 0; t < 50000; ++t) ++counts[r.permutation(5)[0]];
  for (int c : counts) EXPECT_NEAR(c / 50000.0, 0.2, 0.01);
}
