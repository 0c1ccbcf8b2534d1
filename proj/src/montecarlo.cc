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

#include "dcrv/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "dcrv/error.h"
#include "dcrv/random.h"
#include "dcrv/sampler.h"

namespace dcrv {
namespace {

double z_score(double estimate, double target, double standard_error) {
  const double gap = estimate - target;
  if (standard_error > 0.0) return gap / standard_error;
  if (gap == 0.0) return 0.0;
  return gap > 0 ? std::numeric_limits<double>::infinity()
                 : -std::numeric_limits<double>::infinity();
}

}  // namespace

GofReport chi_square_gof(std::span<const std::uint64_t> observed,
                         std::span<const double> expected,
                         std::uint64_t total) {
  if (observed.size() != expected.size()) {
    throw Error(ErrorCode::kInvalidCounts,
                "observed and expected have different cell counts");
  }
  double expected_sum = 0.0;
  for (double e : expected) {
    if (!(e >= 0.0)) {
      throw Error(ErrorCode::kOutOfRange, "negative expected probability");
    }
    expected_sum += e;
  }
  if (std::fabs(expected_sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kSumNotOne, "expected probabilities sum to " +
                                           std::to_string(expected_sum));
  }
  const std::uint64_t observed_sum =
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0});
  if (observed_sum != total) {
    throw Error(ErrorCode::kInvalidCounts,
                "observed counts sum to " + std::to_string(observed_sum) +
                    ", expected " + std::to_string(total));
  }

  const std::size_t cells = observed.size();
  std::vector<std::size_t> order(cells);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return expected[a] < expected[b];
                   });

  const double n = static_cast<double>(total);
  std::size_t pooled = 0;
  double pool_expected = 0.0;
  double pool_observed = 0.0;
  while (pooled < cells &&
         (n * expected[order[pooled]] < kMinExpectedCount ||
          (pooled > 0 && pool_expected < kMinExpectedCount))) {
    pool_expected += n * expected[order[pooled]];
    pool_observed += static_cast<double>(observed[order[pooled]]);
    ++pooled;
  }

  const std::size_t retained = cells - pooled + (pooled > 0 ? 1 : 0);
  if (retained < 2) {
    throw Error(ErrorCode::kDegenerateCells,
                "fewer than two cells remain after pooling");
  }

  double statistic = 0.0;
  if (pooled > 0) {
    const double gap = pool_observed - pool_expected;
    statistic += gap * gap / pool_expected;
  }
  for (std::size_t idx = pooled; idx < cells; ++idx) {
    const double e = n * expected[order[idx]];
    const double gap = static_cast<double>(observed[order[idx]]) - e;
    statistic += gap * gap / e;
  }

  GofReport report;
  report.statistic = statistic;
  report.dof = static_cast<int>(retained) - 1;
  report.p_value =
      boost::math::gamma_q(report.dof / 2.0, statistic / 2.0);
  report.samples = total;
  report.cells_merged = static_cast<int>(pooled);
  return report;
}

CountTrial run_count_trial(const Model& model, int n, std::uint64_t samples,
                           std::uint64_t seed, std::uint64_t cap) {
  return run_count_trial(model, model, n, samples, seed, cap);
}

CountTrial run_count_trial(const Model& sampling_model,
                           const Model& expected_model, int n,
                           std::uint64_t samples, std::uint64_t seed,
                           std::uint64_t cap) {
  if (sampling_model.categories() != expected_model.categories()) {
    throw Error(ErrorCode::kInvalidCounts,
                "sampling and expected models differ in K");
  }
  const int k = sampling_model.categories();
  auto table = pmf_table(expected_model, n, cap);

  CountTrial trial;
  std::map<std::vector<int>, std::size_t> cell_of;
  trial.cells.reserve(table.size());
  for (auto& row : table) {
    cell_of.emplace(row.counts, trial.cells.size());
    trial.cells.push_back({std::move(row.counts), row.probability, 0});
  }

  SplitMix64 rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto sequence = sample_inverse(sampling_model, n, rng.uniform());
    ++trial.cells[cell_of.at(counts(sequence, k))].observed;
  }

  std::vector<std::uint64_t> observed;
  std::vector<double> expected;
  for (const auto& cell : trial.cells) {
    observed.push_back(cell.observed);
    expected.push_back(cell.expected_prob);
  }
  trial.report = chi_square_gof(observed, expected, samples);
  return trial;
}

EmpiricalMoments empirical_moments(const Model& model, int n,
                                   std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) {
    throw Error(ErrorCode::kOutOfRange, "need at least two samples");
  }
  const int k = model.categories();
  std::vector<int> draws;
  draws.reserve(samples * k);
  SplitMix64 rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto histogram =
        counts(sample_inverse(model, n, rng.uniform()), k);
    draws.insert(draws.end(), histogram.begin(), histogram.end());
  }

  const double count = static_cast<double>(samples);
  EmpiricalMoments result;
  result.samples = samples;
  result.mean.assign(k, 0.0);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < k; ++i) result.mean[i] += draws[s * k + i];
  }
  for (auto& value : result.mean) value /= count;

  SquareMatrix<double> cross(k);   // sum of d_i d_j
  SquareMatrix<double> fourth(k);  // sum of (d_i d_j)^2
  std::vector<double> deviation(k);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < k; ++i) deviation[i] = draws[s * k + i] - result.mean[i];
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const double product = deviation[i] * deviation[j];
        cross(i, j) += product;
        fourth(i, j) += product * product;
      }
    }
  }

  const auto target_mean = mean(model, n);
  const auto target_cov = covariance(model, n, FormulaSource::kOracleVerified);
  result.covariance = SquareMatrix<double>(k);
  result.covariance_se = SquareMatrix<double>(k);
  result.covariance_z = SquareMatrix<double>(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double biased = cross(i, j) / count;
      result.covariance(i, j) = cross(i, j) / (count - 1.0);
      const double spread = std::max(0.0, fourth(i, j) / count - biased * biased);
      result.covariance_se(i, j) = std::sqrt(spread / count);
      result.covariance_z(i, j) =
          z_score(result.covariance(i, j), target_cov(i, j),
                  result.covariance_se(i, j));
    }
  }
  for (int i = 0; i < k; ++i) {
    result.mean_se.push_back(std::sqrt(result.covariance(i, i) / count));
    result.mean_z.push_back(
        z_score(result.mean[i], target_mean[i], result.mean_se[i]));
  }
  return result;
}

}  // namespace dcrv
