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

#ifndef DCRV_DISTRIBUTION_H_
#define DCRV_DISTRIBUTION_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "dcrv/matrix.h"
#include "dcrv/params.h"

namespace dcrv {

// Closed forms for the count vector X = (X_1..X_K) of a dependent sequence
// of length n (the generalized multinomial distribution). Templated
// operations are available for double and Rational.

inline constexpr std::uint64_t kDefaultTableCap = 1'000'000;

// Throws kInvalidCounts unless `counts` has K non-negative entries summing
// to n (n >= 1).
void validate_counts(std::span<const int> counts, int categories, int n);

// P(X = x). The i-th term needs x_i >= 1 (the first draw landed in i), so
// terms with x_i = 0 contribute nothing.
template <typename Scalar>
Scalar pmf(const BasicModel<Scalar>& model, int n, std::span<const int> counts);

// C(n + K - 1, K - 1), saturating at UINT64_MAX.
std::uint64_t composition_count(int n, int categories);

// All count vectors of K parts summing to n, ordered from (n,0,..,0) down to
// (0,..,0,n) (descending lexicographic order).
std::vector<std::vector<int>> compositions(int n, int categories,
                                           std::uint64_t cap = kDefaultTableCap);

template <typename Scalar>
struct PmfRow {
  std::vector<int> counts;
  Scalar probability;
};

// Throws kTableTooLarge when composition_count exceeds `cap`.
template <typename Scalar>
std::vector<PmfRow<Scalar>> pmf_table(const BasicModel<Scalar>& model, int n,
                                      std::uint64_t cap = kDefaultTableCap);

// P(X_i = k): the two-term generalized binomial
//   p_i C(n-1, k-1) (p_i^+)^(k-1) (q^-)^(n-k)
//     + q C(n-1, k) (p_i^-)^k (q^+)^(n-1-k)
// where the first term vanishes at k = 0 and the second at k = n.
template <typename Scalar>
Scalar marginal_pmf(const BasicModel<Scalar>& model, int n, int category,
                    int k);

// E[exp(t . X)]. Throws kNonFinite on overflow or non-finite t.
double mgf(const Model& model, int n, std::span<const double> t);

template <typename Scalar>
std::vector<Scalar> mean(const BasicModel<Scalar>& model, int n);

enum class FormulaSource {
  // Sum of the pairwise cross-covariances over all position pairs.
  kOracleVerified,
  // The closed forms as originally published, kept for errata comparison.
  kPaperPrinted,
};

std::string_view formula_source_name(FormulaSource source);

// Variance multiplier of the oracle-verified covariance:
// n + 2 delta (n-1) + delta^2 (n-1)(n-2).
template <typename Scalar>
Scalar covariance_scale(const Scalar& delta, int n);

template <typename Scalar>
SquareMatrix<Scalar> covariance(const BasicModel<Scalar>& model, int n,
                                FormulaSource source);

// rho_ij = Sigma_ij / sqrt(Sigma_ii Sigma_jj). Throws kDegenerateVariance if
// a diagonal entry of the selected covariance is not positive.
SquareMatrix<double> correlation(const Model& model, int n,
                                 FormulaSource source);

struct MomentSummary {
  std::vector<double> mean;
  SquareMatrix<double> covariance;
  SquareMatrix<double> correlation;
  FormulaSource formula_source = FormulaSource::kOracleVerified;
};

MomentSummary moments(const Model& model, int n, FormulaSource source);

template <typename Scalar>
struct CrossCovarianceMatrix {
  int iota = 0;
  int tau = 0;
  SquareMatrix<Scalar> entries;
};

// Cov([e_iota = i], [e_tau = j]) for positions 1 <= iota < tau: delta-scaled
// multinomial covariance when iota = 1, delta^2-scaled otherwise.
template <typename Scalar>
CrossCovarianceMatrix<Scalar> cross_covariance(const BasicModel<Scalar>& model,
                                               int iota, int tau);

}  // namespace dcrv

#endif  // DCRV_DISTRIBUTION_H_
