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

#ifndef DCRV_ORACLE_H_
#define DCRV_ORACLE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "dcrv/matrix.h"
#include "dcrv/params.h"
#include "dcrv/rational.h"

namespace dcrv {

// Brute-force ground truth: every one of the K^n sequences with its exact
// probability. All derived quantities below are plain sums over this table
// and never call the closed forms they are used to check.

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

class ExactDistribution {
 public:
  ExactDistribution(ExactModel model, int n, std::vector<Rational> masses)
      : model_(std::move(model)), n_(n), masses_(std::move(masses)) {}

  const ExactModel& model() const { return model_; }
  int length() const { return n_; }
  int categories() const { return model_.categories(); }
  // Indexed by lex_index - 1.
  const std::vector<Rational>& masses() const { return masses_; }

  // Calls visit(sequence, mass) in lexicographic order.
  void for_each(const std::function<void(std::span<const int>,
                                         const Rational&)>& visit) const;

 private:
  ExactModel model_;
  int n_;
  std::vector<Rational> masses_;
};

// Throws kEnumerationTooLarge when K^n exceeds `cap`.
ExactDistribution enumerate_distribution(
    const ExactModel& model, int n,
    std::uint64_t cap = kDefaultEnumerationCap);

// Pushforward of the sequence masses under the count map.
std::map<std::vector<int>, Rational> oracle_count_distribution(
    const ExactDistribution& dist);

Rational oracle_pmf(const ExactDistribution& dist, std::span<const int> counts);

struct ExactMoments {
  std::vector<Rational> mean;
  SquareMatrix<Rational> covariance;
};

ExactMoments oracle_moments(const ExactDistribution& dist);

// Distribution of the r-th entry (1-based).
std::vector<Rational> oracle_position_marginal(const ExactDistribution& dist,
                                               int position);

SquareMatrix<Rational> oracle_cross_covariance(const ExactDistribution& dist,
                                               int iota, int tau);

// E[exp(t . X)], accumulated in long double from the exact masses.
double oracle_mgf(const ExactDistribution& dist, std::span<const double> t);

}  // namespace dcrv

#endif  // DCRV_ORACLE_H_
