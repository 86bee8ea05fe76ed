// Copyright 2026 The exact-search Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dense_oracle.hpp"
#include "exact_search/exact_search.hpp"
#include "random_circuits.hpp"

using namespace exact_search;

namespace {

constexpr double kTol = 1e-9;

TEST(StateVector, ZeroState) {
  const auto s = init_zero(3);
  EXPECT_EQ(s.dim(), 8U);
  EXPECT_EQ(s[0], Complex(1.0));
  for (BasisIndex i = 1; i < 8; ++i) EXPECT_EQ(s[i], Complex(0.0));
}

TEST(StateVector, WidthBounds) {
  EXPECT_THROW(init_zero(0), InvalidArgument);
  EXPECT_THROW(init_zero(kMaxStateQubits + 1), InvalidArgument);
}

TEST(StateVector, HadamardOnOneQubit) {
  const auto s = apply_gate(init_zero(1), gates::h(0));
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(s[0] - r), 0.0, kTol);
  EXPECT_NEAR(std::abs(s[1] - r), 0.0, kTol);
}

TEST(StateVector, QubitZeroIsLeastSignificant) {
  Circuit c(3);
  c.append(gates::x(0));
  EXPECT_EQ(run(c)[1], Complex(1.0));
  Circuit d(3);
  d.append(gates::x(2));
  EXPECT_EQ(run(d)[4], Complex(1.0));
}

TEST(StateVector, CnotRespectsControl) {
  Circuit c(2);
  c.append(gates::cnot(0, 1));
  EXPECT_EQ(run(c)[0], Complex(1.0));
  c = Circuit(2);
  c.append(gates::x(0)).append(gates::cnot(0, 1));
  EXPECT_EQ(run(c)[3], Complex(1.0));
}

TEST(StateVector, RejectsBadGate) {
  auto s = init_zero(2);
  EXPECT_THROW(s.apply(gates::h(3)), InvalidArgument);
}

TEST(StateVector, ZeroGateCircuitNormIsOne) {
  EXPECT_NEAR(run_checked(Circuit(4)).norm_squared(), 1.0, kTol);
}

TEST(StateVector, MatchesDenseOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const Circuit c = gen::random_circuit(rng, n, 40);
    const oracle::Vec ref = oracle::circuit_matrix(c).col(0);
    const auto s = run_checked(c);
    for (BasisIndex i = 0; i < s.dim(); ++i) {
      EXPECT_NEAR(std::abs(s[i] - ref(static_cast<Eigen::Index>(i))), 0.0, kTol);
    }
  }
}

TEST(StateVectorProperty, NormPreservedOnRandomCircuits) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const Circuit c = gen::random_circuit(rng, 1 + trial % 8, 60);
    EXPECT_NO_THROW(run_checked(c));
    EXPECT_NEAR(run(c).norm_squared(), 1.0, kTol);
  }
}

TEST(SuccessProbability, SumsTargetMass) {
  Circuit c(2);
  c.append(gates::h(0)).append(gates::h(1));
  const auto s = run(c);
  const std::vector<BasisIndex> t = {0, 3};
  EXPECT_NEAR(success_probability(s, t), 0.5, kTol);
  const std::vector<BasisIndex> bad = {4};
  EXPECT_THROW(success_probability(s, bad), InvalidArgument);
}

TEST(Sampling, DeterministicForSeed) {
  Circuit c(3);
  for (Qubit q = 0; q < 3; ++q) c.append(gates::h(q));
  const auto s = run(c);
  const auto a = sample(s, 500, 42);
  const auto b = sample(s, 500, 42);
  EXPECT_EQ(a.counts, b.counts);
  std::size_t total = 0;
  for (const auto& [k, v] : a.counts) total += v;
  EXPECT_EQ(total, 500U);
  EXPECT_NE(a.counts, sample(s, 500, 43).counts);
}

TEST(Sampling, NeverDrawsZeroProbabilityOutcome) {
  Circuit c(3);
  c.append(gates::x(1)).append(gates::h(0));
  const auto h = sample(run(c), 2000, 5);
  for (const auto& [k, v] : h.counts) EXPECT_TRUE(k == 2 || k == 3) << k;
}

TEST(Sampling, CertainOutcome) {
  Circuit c(2);
  c.append(gates::x(0)).append(gates::x(1));
  const auto h = sample(run(c), 100, 1);
  EXPECT_EQ(h.count(3), 100U);
  EXPECT_THROW(sample(run(c), 0, 1), InvalidArgument);
}

TEST(Sampling, FrequenciesWithinBinomialBand) {
  Circuit c(1);
  c.append(gates::ry(1.0, 0));
  const auto s = run(c);
  const double p = std::norm(s[1]);
  const std::size_t shots = 20000;
  const auto h = sample(s, shots, 2026);
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(shots));
  EXPECT_NEAR(static_cast<double>(h.count(1)) / shots, p, 5 * sigma);
}

TEST(UnitUniform, InHalfOpenUnitInterval) {
  std::mt19937_64 rng(0);
  for (int i = 0; i < 10000; ++i) {
    const double u = unit_uniform(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
