// Copyright 2026 The dcrv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dcrv/oracle.h"

#include <gtest/gtest.h>

#include <cmath>

#include "dcrv/distribution.h"
#include "dcrv/error.h"
#include "dcrv/sampler.h"
#include "test_support.h"

namespace dcrv {
namespace {

TEST(EnumerateTest, MassesMatchBruteForceInLexOrder) {
  SplitMix64 rng(101);
  for (int k = 2; k <= 4; ++k) {
    for (int n = 1; n <= 4; ++n) {
      const ExactModel model = testing::random_exact_model(rng, k);
      const ExactDistribution dist = enumerate_distribution(model, n);
      const testing::BruteForce brute(model.probabilities(), model.delta(), n);
      ASSERT_EQ(dist.masses().size(), brute.sequences().size());
      auto expected = brute.sequences().begin();
      std::uint64_t index = 0;
      dist.for_each([&](std::span<const int> sequence, const Rational& mass) {
        ++index;
        EXPECT_EQ(std::vector<int>(sequence.begin(), sequence.end()),
                  expected->first);
        EXPECT_EQ(lex_index(sequence, k), index);
        EXPECT_EQ(mass, expected->second);
        ++expected;
      });
    }
  }
}

TEST(EnumerateTest, CapIsEnforced) {
  const ExactModel model = new_exact_model(
      {Rational(1, 2), Rational(1, 4), Rational(1, 4)}, Rational(1, 3));
  try {
    enumerate_distribution(model, 7, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEnumerationTooLarge);
  }
  EXPECT_NO_THROW(enumerate_distribution(model, 6, 729));
}

TEST(OraclePmfTest, AgreesWithBruteForceCounts) {
  SplitMix64 rng(103);
  const ExactModel model = testing::random_exact_model(rng, 3);
  const ExactDistribution dist = enumerate_distribution(model, 5);
  const auto counts_map = oracle_count_distribution(dist);
  const auto truth = testing::BruteForce(model.probabilities(), model.delta(), 5)
                         .count_pmf();
  EXPECT_EQ(counts_map, truth);
  for (const auto& [counts, mass] : truth) {
    EXPECT_EQ(oracle_pmf(dist, counts), mass);
  }
  EXPECT_THROW(oracle_pmf(dist, std::vector<int>{1, 1, 1}), Error);
}

TEST(OracleMomentsTest, FrozenSkewedModel) {
  const ExactModel model = new_exact_model(
      {Rational(1, 5), Rational(3, 10), Rational(1, 2)}, Rational(2, 5));
  const ExactMoments moments = oracle_moments(enumerate_distribution(model, 4));
  EXPECT_EQ(moments.mean[0], Rational(4, 5));
  EXPECT_EQ(moments.mean[2], Rational(2));
  EXPECT_EQ(moments.covariance(0, 0), Rational(736, 625));
  EXPECT_EQ(moments.covariance(1, 2), Rational(-138, 125));
}

TEST(OracleMomentsTest, ClosedFormsAgreeExactly) {
  SplitMix64 rng(107);
  for (int k = 2; k <= 3; ++k) {
    for (int n = 1; n <= 6; ++n) {
      const ExactModel model = testing::random_exact_model(rng, k);
      const ExactMoments oracle = oracle_moments(enumerate_distribution(model, n));
      EXPECT_EQ(oracle.mean, mean(model, n));
      EXPECT_EQ(oracle.covariance,
                covariance(model, n, FormulaSource::kOracleVerified));
    }
  }
}

TEST(PositionMarginalTest, EveryPositionHasBaseMarginal) {
  SplitMix64 rng(109);
  for (int trial = 0; trial < 10; ++trial) {
    const ExactModel model = testing::random_exact_model(rng, 3);
    const ExactDistribution dist = enumerate_distribution(model, 4);
    for (int position = 1; position <= 4; ++position) {
      EXPECT_EQ(oracle_position_marginal(dist, position), model.probabilities());
    }
    EXPECT_THROW(oracle_position_marginal(dist, 0), Error);
    EXPECT_THROW(oracle_position_marginal(dist, 5), Error);
  }
}

TEST(OracleCrossCovarianceTest, ClosedFormAgreesExactly) {
  SplitMix64 rng(113);
  for (int n = 2; n <= 5; ++n) {
    const ExactModel model = testing::random_exact_model(rng, 3);
    const ExactDistribution dist = enumerate_distribution(model, n);
    for (int iota = 1; iota <= n; ++iota) {
      for (int tau = iota + 1; tau <= n; ++tau) {
        EXPECT_EQ(oracle_cross_covariance(dist, iota, tau),
                  cross_covariance(model, iota, tau).entries);
      }
    }
    EXPECT_THROW(oracle_cross_covariance(dist, 2, 1), Error);
  }
}

TEST(OracleMgfTest, AgreesWithClosedForm) {
  const ExactModel exact = new_exact_model(
      {Rational(1, 5), Rational(3, 10), Rational(1, 2)}, Rational(3, 5));
  const ExactDistribution dist = enumerate_distribution(exact, 3);
  const std::vector<double> t = {0.1, -0.2, 0.3};
  EXPECT_NEAR(oracle_mgf(dist, t), 1.5804981471611566, 1e-14);
  EXPECT_NEAR(oracle_mgf(dist, t), mgf(to_floating(exact), 3, t), 1e-12);
  EXPECT_DOUBLE_EQ(oracle_mgf(dist, std::vector<double>{0, 0, 0}), 1.0);
}

}  // namespace
}  // namespace dcrv
