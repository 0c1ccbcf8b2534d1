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

#ifndef DCRV_MONTECARLO_H_
#define DCRV_MONTECARLO_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dcrv/distribution.h"
#include "dcrv/matrix.h"
#include "dcrv/params.h"

namespace dcrv {

// Cells whose expected count falls below this are pooled before the
// chi-square statistic is formed.
inline constexpr double kMinExpectedCount = 5.0;

struct GofReport {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  std::uint64_t samples = 0;
  int cells_merged = 0;  // original cells folded into the pooled cell
};

// Pearson goodness of fit. Cells with expected count below
// kMinExpectedCount are merged, lowest expectation first, into one pooled
// cell; if the pool is still below the threshold the next-lowest cells join
// it. The p-value is the regularized upper incomplete gamma Q(dof/2, x/2).
//
// Throws kSumNotOne (expected does not sum to 1 within 1e-9),
// kInvalidCounts (observed does not sum to total) and kDegenerateCells
// (fewer than two cells remain).
GofReport chi_square_gof(std::span<const std::uint64_t> observed,
                         std::span<const double> expected,
                         std::uint64_t total);

struct GofCell {
  std::vector<int> counts;
  double expected_prob = 0.0;
  std::uint64_t observed = 0;
};

struct CountTrial {
  GofReport report;
  std::vector<GofCell> cells;  // composition order of pmf_table
};

// Draws `samples` sequences with sample_many semantics and tests their
// count vectors against pmf_table(model, n).
CountTrial run_count_trial(const Model& model, int n, std::uint64_t samples,
                           std::uint64_t seed,
                           std::uint64_t cap = kDefaultTableCap);

// Same, but the expected cell probabilities come from `expected_model`.
// Used to measure power against a misspecified dependency coefficient.
CountTrial run_count_trial(const Model& sampling_model,
                           const Model& expected_model, int n,
                           std::uint64_t samples, std::uint64_t seed,
                           std::uint64_t cap = kDefaultTableCap);

struct EmpiricalMoments {
  std::uint64_t samples = 0;
  std::vector<double> mean;
  std::vector<double> mean_se;
  std::vector<double> mean_z;  // against n p
  SquareMatrix<double> covariance;     // unbiased
  SquareMatrix<double> covariance_se;  // from the fourth central moments
  SquareMatrix<double> covariance_z;   // against the oracle-verified form
};

// Throws kOutOfRange when samples < 2.
EmpiricalMoments empirical_moments(const Model& model, int n,
                                   std::uint64_t samples, std::uint64_t seed);

}  // namespace dcrv

#endif  // DCRV_MONTECARLO_H_
