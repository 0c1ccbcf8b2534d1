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

#include "dcrv/distribution.h"

#include <cmath>
#include <limits>
#include <string>

#include "dcrv/error.h"

namespace dcrv {
namespace {

// Below this length the multinomial coefficients fit in 64 bits exactly.
constexpr int kDirectCoefficientMaxN = 20;

template <typename Scalar>
struct Power {
  Scalar base;
  int exponent;
};

std::uint64_t binomial_u64(int n, int k) {
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / i;
  }
  return result;
}

// top! / prod(parts!) where sum(parts) == top, exactly in 64 bits.
std::uint64_t multinomial_u64(int top, std::span<const int> parts) {
  std::uint64_t result = 1;
  int remaining = top;
  for (int part : parts) {
    result *= binomial_u64(remaining, part);
    remaining -= part;
  }
  return result;
}

BigInt multinomial_exact(int top, std::span<const int> parts) {
  BigInt result = factorial(top);
  for (int part : parts) result /= factorial(part);
  return result;
}

// leading * multinomial(top; parts) * prod(base^exponent).
template <typename Scalar>
Scalar weighted_term(const Scalar& leading, int top, std::span<const int> parts,
                     std::span<const Power<Scalar>> powers, int n) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    Rational result = leading * Rational(multinomial_exact(top, parts));
    for (const auto& power : powers) {
      result *= ipow(power.base, power.exponent);
    }
    return result;
  } else {
    if (n <= kDirectCoefficientMaxN) {
      double result =
          leading * static_cast<double>(multinomial_u64(top, parts));
      for (const auto& power : powers) {
        result *= ipow(power.base, power.exponent);
      }
      return result;
    }
    if (leading == 0.0) return 0.0;
    double log_term = std::log(leading) + std::lgamma(top + 1.0);
    for (int part : parts) log_term -= std::lgamma(part + 1.0);
    for (const auto& power : powers) {
      if (power.exponent == 0) continue;
      if (power.base == 0.0) return 0.0;
      log_term += power.exponent * std::log(power.base);
    }
    return std::exp(log_term);
  }
}

void check_category(int category, int categories) {
  if (category < 1 || category > categories) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "category " + std::to_string(category) + " is not in 1.." +
                    std::to_string(categories));
  }
}

void check_length(int n) {
  if (n < 1) {
    throw Error(ErrorCode::kOutOfRange,
                "sequence length must be >= 1, got " + std::to_string(n));
  }
}

void append_compositions(int remaining, int slots, std::vector<int>& prefix,
                         std::vector<std::vector<int>>& out) {
  if (slots == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = remaining; first >= 0; --first) {
    prefix.push_back(first);
    append_compositions(remaining - first, slots - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

void validate_counts(std::span<const int> counts, int categories, int n) {
  check_length(n);
  if (static_cast<int>(counts.size()) != categories) {
    throw Error(ErrorCode::kInvalidCounts,
                "expected " + std::to_string(categories) + " counts, got " +
                    std::to_string(counts.size()));
  }
  long total = 0;
  for (int count : counts) {
    if (count < 0) {
      throw Error(ErrorCode::kInvalidCounts, "negative count");
    }
    total += count;
  }
  if (total != n) {
    throw Error(ErrorCode::kInvalidCounts,
                "counts sum to " + std::to_string(total) + ", expected " +
                    std::to_string(n));
  }
}

template <typename Scalar>
Scalar pmf(const BasicModel<Scalar>& model, int n,
           std::span<const int> counts) {
  const int k = model.categories();
  validate_counts(counts, k, n);
  Scalar total(0);
  std::vector<int> parts(counts.begin(), counts.end());
  std::vector<Power<Scalar>> powers(k);
  for (int i = 1; i <= k; ++i) {
    const int xi = counts[i - 1];
    if (xi == 0) continue;
    parts[i - 1] = xi - 1;
    for (int j = 1; j <= k; ++j) {
      powers[j - 1] = j == i ? Power<Scalar>{model.p_plus(j), xi - 1}
                             : Power<Scalar>{model.p_minus(j), counts[j - 1]};
    }
    total += weighted_term<Scalar>(model.p(i), n - 1, parts, powers, n);
    parts[i - 1] = xi;
  }
  return total;
}

std::uint64_t composition_count(int n, int categories) {
  const BigInt count = binomial(n + categories - 1, categories - 1);
  if (count > BigInt(std::to_string(std::numeric_limits<std::uint64_t>::max()))) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return std::stoull(count.get_str());
}

std::vector<std::vector<int>> compositions(int n, int categories,
                                           std::uint64_t cap) {
  check_length(n);
  if (categories < 1) {
    throw Error(ErrorCode::kTooFewCategories, "need at least one category");
  }
  const std::uint64_t count = composition_count(n, categories);
  if (count > cap) {
    throw Error(ErrorCode::kTableTooLarge,
                std::to_string(count) + " compositions exceed the cap of " +
                    std::to_string(cap));
  }
  std::vector<std::vector<int>> out;
  out.reserve(count);
  std::vector<int> prefix;
  prefix.reserve(categories);
  append_compositions(n, categories, prefix, out);
  return out;
}

template <typename Scalar>
std::vector<PmfRow<Scalar>> pmf_table(const BasicModel<Scalar>& model, int n,
                                      std::uint64_t cap) {
  std::vector<PmfRow<Scalar>> table;
  for (auto& counts : compositions(n, model.categories(), cap)) {
    Scalar probability = pmf(model, n, counts);
    table.push_back({std::move(counts), std::move(probability)});
  }
  return table;
}

template <typename Scalar>
Scalar marginal_pmf(const BasicModel<Scalar>& model, int n, int category,
                    int k) {
  check_length(n);
  check_category(category, model.categories());
  if (k < 0 || k > n) {
    throw Error(ErrorCode::kCountOutOfRange,
                "count " + std::to_string(k) + " is not in 0.." +
                    std::to_string(n));
  }
  const auto collapsed = marginal_params(model, category);
  Scalar result(0);
  if (k >= 1) {
    // First draw is the focal category: the rest see p_i^+ versus q^-.
    const int parts[] = {k - 1, n - k};
    const Power<Scalar> powers[] = {{model.p_plus(category), k - 1},
                                    {collapsed.q_minus, n - k}};
    result += weighted_term<Scalar>(model.p(category), n - 1, parts, powers, n);
  }
  if (k <= n - 1) {
    // First draw is elsewhere: the rest see p_i^- versus q^+.
    const int parts[] = {k, n - 1 - k};
    const Power<Scalar> powers[] = {{model.p_minus(category), k},
                                    {collapsed.q_plus, n - 1 - k}};
    result += weighted_term<Scalar>(collapsed.q, n - 1, parts, powers, n);
  }
  return result;
}

double mgf(const Model& model, int n, std::span<const double> t) {
  check_length(n);
  const int k = model.categories();
  if (static_cast<int>(t.size()) != k) {
    throw Error(ErrorCode::kOutOfRange,
                "expected " + std::to_string(k) + " arguments, got " +
                    std::to_string(t.size()));
  }
  std::vector<double> growth(k);  // e^{t_j} - 1
  for (int j = 0; j < k; ++j) {
    if (!std::isfinite(t[j])) {
      throw Error(ErrorCode::kNonFinite, "mgf argument is not finite");
    }
    growth[j] = std::expm1(t[j]);
  }
  // Written as 1 + sum_i p_i (e^{t_i} inner_i^{n-1} - 1), with inner_i =
  // 1 + sum_j c_j (e^{t_j} - 1); both rewrites use that the weights sum to
  // one and keep full relative precision near t = 0.
  double excess = 0.0;
  for (int i = 1; i <= k; ++i) {
    double inner_excess = 0.0;
    double inner_direct = 0.0;
    for (int j = 1; j <= k; ++j) {
      const double c = j == i ? model.p_plus(j) : model.p_minus(j);
      inner_excess += c * growth[j - 1];
      inner_direct += c * std::exp(t[j - 1]);
    }
    const double log_inner = inner_excess > -0.5 ? std::log1p(inner_excess)
                                                 : std::log(inner_direct);
    const double exponent = t[i - 1] + (n - 1) * log_inner;
    excess += model.p(i) * std::expm1(exponent);
  }
  const double result = 1.0 + excess;
  if (!std::isfinite(result)) {
    throw Error(ErrorCode::kNonFinite, "moment generating function overflowed");
  }
  return result;
}

template <typename Scalar>
std::vector<Scalar> mean(const BasicModel<Scalar>& model, int n) {
  check_length(n);
  std::vector<Scalar> result;
  for (const auto& p : model.probabilities()) result.push_back(Scalar(n * p));
  return result;
}

std::string_view formula_source_name(FormulaSource source) {
  switch (source) {
    case FormulaSource::kOracleVerified: return "oracle_verified";
    case FormulaSource::kPaperPrinted: return "paper_printed";
  }
  return "unknown";
}

template <typename Scalar>
Scalar covariance_scale(const Scalar& delta, int n) {
  return Scalar(n + 2 * delta * (n - 1) + delta * delta * (n - 1) * (n - 2));
}

template <typename Scalar>
SquareMatrix<Scalar> covariance(const BasicModel<Scalar>& model, int n,
                                FormulaSource source) {
  check_length(n);
  const int k = model.categories();
  const Scalar& d = model.delta();
  Scalar diagonal_scale;
  Scalar off_diagonal_scale;
  if (source == FormulaSource::kOracleVerified) {
    diagonal_scale = covariance_scale(d, n);
    off_diagonal_scale = -diagonal_scale;
  } else {
    diagonal_scale = n + d * (n - 1) + d * d * (n - 1) * (n - 2);
    off_diagonal_scale = d * (1 - d) * (n - 2) * (n - 1) - n;
  }
  SquareMatrix<Scalar> result(k);
  for (int i = 0; i < k; ++i) {
    const Scalar& pi = model.probabilities()[i];
    for (int j = 0; j < k; ++j) {
      const Scalar& pj = model.probabilities()[j];
      result(i, j) = i == j ? Scalar(pi * (1 - pi) * diagonal_scale)
                            : Scalar(pi * pj * off_diagonal_scale);
    }
  }
  return result;
}

SquareMatrix<double> correlation(const Model& model, int n,
                                 FormulaSource source) {
  const auto sigma = covariance(model, n, source);
  const int k = sigma.size();
  for (int i = 0; i < k; ++i) {
    if (!(sigma(i, i) > 0.0)) {
      throw Error(ErrorCode::kDegenerateVariance,
                  "variance of category " + std::to_string(i + 1) +
                      " is not positive");
    }
  }
  SquareMatrix<double> rho(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      rho(i, j) = i == j ? 1.0
                         : sigma(i, j) / std::sqrt(sigma(i, i) * sigma(j, j));
    }
  }
  return rho;
}

MomentSummary moments(const Model& model, int n, FormulaSource source) {
  MomentSummary summary;
  summary.mean = mean(model, n);
  summary.covariance = covariance(model, n, source);
  summary.correlation = correlation(model, n, source);
  summary.formula_source = source;
  return summary;
}

template <typename Scalar>
CrossCovarianceMatrix<Scalar> cross_covariance(const BasicModel<Scalar>& model,
                                               int iota, int tau) {
  if (iota < 1 || iota >= tau) {
    throw Error(ErrorCode::kBadPositions,
                "need 1 <= iota < tau, got iota=" + std::to_string(iota) +
                    ", tau=" + std::to_string(tau));
  }
  const int k = model.categories();
  const Scalar& d = model.delta();
  const Scalar scale = iota == 1 ? d : Scalar(d * d);
  CrossCovarianceMatrix<Scalar> result{iota, tau, SquareMatrix<Scalar>(k)};
  for (int i = 0; i < k; ++i) {
    const Scalar& pi = model.probabilities()[i];
    for (int j = 0; j < k; ++j) {
      const Scalar& pj = model.probabilities()[j];
      result.entries(i, j) = i == j ? Scalar(scale * pi * (1 - pi))
                                    : Scalar(-scale * pi * pj);
    }
  }
  return result;
}

#define DCRV_INSTANTIATE(S)                                                  \
  template S pmf(const BasicModel<S>&, int, std::span<const int>);          \
  template std::vector<PmfRow<S>> pmf_table(const BasicModel<S>&, int,      \
                                            std::uint64_t);                 \
  template S marginal_pmf(const BasicModel<S>&, int, int, int);             \
  template std::vector<S> mean(const BasicModel<S>&, int);                  \
  template S covariance_scale(const S&, int);                               \
  template SquareMatrix<S> covariance(const BasicModel<S>&, int,            \
                                      FormulaSource);                       \
  template CrossCovarianceMatrix<S> cross_covariance(const BasicModel<S>&,  \
                                                     int, int);

DCRV_INSTANTIATE(double)
DCRV_INSTANTIATE(Rational)

#undef DCRV_INSTANTIATE

}  // namespace dcrv
