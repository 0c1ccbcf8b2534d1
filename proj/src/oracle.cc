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

#include <cmath>
#include <string>

#include "dcrv/error.h"

namespace dcrv {
namespace {

std::uint64_t checked_power(int base, int exponent, std::uint64_t cap) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (result > cap / static_cast<std::uint64_t>(base)) {
      throw Error(ErrorCode::kEnumerationTooLarge,
                  std::to_string(base) + "^" + std::to_string(exponent) +
                      " sequences exceed the cap of " + std::to_string(cap));
    }
    result *= static_cast<std::uint64_t>(base);
  }
  return result;
}

}  // namespace

void ExactDistribution::for_each(
    const std::function<void(std::span<const int>, const Rational&)>& visit)
    const {
  const int k = categories();
  std::vector<int> sequence(n_, 1);
  for (const auto& mass : masses_) {
    visit(sequence, mass);
    // Odometer increment, last position fastest.
    for (int j = n_ - 1; j >= 0; --j) {
      if (++sequence[j] <= k) break;
      sequence[j] = 1;
    }
  }
}

ExactDistribution enumerate_distribution(const ExactModel& model, int n,
                                         std::uint64_t cap) {
  if (n < 1) {
    throw Error(ErrorCode::kOutOfRange,
                "sequence length must be >= 1, got " + std::to_string(n));
  }
  const int k = model.categories();
  const std::uint64_t total = checked_power(k, n, cap);

  std::vector<std::vector<Rational>> conditional(k);
  for (int i = 1; i <= k; ++i) {
    conditional[i - 1] = conditional_probs(model, i).probs;
  }

  std::vector<Rational> masses = model.probabilities();
  // Children of prefix index m sit at m*K .. m*K + K-1; the first entry of
  // prefix m at level r is m / K^(r-1).
  std::uint64_t block = 1;
  for (int level = 2; level <= n; ++level) {
    std::vector<Rational> next;
    next.reserve(masses.size() * k);
    for (std::uint64_t m = 0; m < masses.size(); ++m) {
      const auto& flow = conditional[m / block];
      for (int j = 0; j < k; ++j) next.push_back(masses[m] * flow[j]);
    }
    masses = std::move(next);
    block *= static_cast<std::uint64_t>(k);
  }
  (void)total;
  return ExactDistribution(model, n, std::move(masses));
}

std::map<std::vector<int>, Rational> oracle_count_distribution(
    const ExactDistribution& dist) {
  std::map<std::vector<int>, Rational> table;
  const int k = dist.categories();
  std::vector<int> histogram(k);
  dist.for_each([&](std::span<const int> sequence, const Rational& mass) {
    std::fill(histogram.begin(), histogram.end(), 0);
    for (int entry : sequence) ++histogram[entry - 1];
    table[histogram] += mass;
  });
  return table;
}

Rational oracle_pmf(const ExactDistribution& dist,
                    std::span<const int> counts) {
  const int k = dist.categories();
  long total = 0;
  bool valid = static_cast<int>(counts.size()) == k;
  for (int count : counts) {
    valid = valid && count >= 0;
    total += count;
  }
  if (!valid || total != dist.length()) {
    throw Error(ErrorCode::kInvalidCounts,
                "counts do not form a composition of " +
                    std::to_string(dist.length()));
  }
  Rational result(0);
  std::vector<int> histogram(k);
  dist.for_each([&](std::span<const int> sequence, const Rational& mass) {
    std::fill(histogram.begin(), histogram.end(), 0);
    for (int entry : sequence) ++histogram[entry - 1];
    if (std::equal(histogram.begin(), histogram.end(), counts.begin())) {
      result += mass;
    }
  });
  return result;
}

ExactMoments oracle_moments(const ExactDistribution& dist) {
  const int k = dist.categories();
  std::vector<Rational> first(k, Rational(0));
  SquareMatrix<Rational> second(k);
  std::vector<int> histogram(k);
  dist.for_each([&](std::span<const int> sequence, const Rational& mass) {
    std::fill(histogram.begin(), histogram.end(), 0);
    for (int entry : sequence) ++histogram[entry - 1];
    for (int i = 0; i < k; ++i) {
      if (histogram[i] == 0) continue;
      first[i] += histogram[i] * mass;
      for (int j = 0; j < k; ++j) {
        if (histogram[j] != 0) second(i, j) += histogram[i] * histogram[j] * mass;
      }
    }
  });
  ExactMoments moments{first, SquareMatrix<Rational>(k)};
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      moments.covariance(i, j) = second(i, j) - first[i] * first[j];
    }
  }
  return moments;
}

std::vector<Rational> oracle_position_marginal(const ExactDistribution& dist,
                                               int position) {
  if (position < 1 || position > dist.length()) {
    throw Error(ErrorCode::kBadPosition,
                "position " + std::to_string(position) + " is not in 1.." +
                    std::to_string(dist.length()));
  }
  std::vector<Rational> marginal(dist.categories(), Rational(0));
  dist.for_each([&](std::span<const int> sequence, const Rational& mass) {
    marginal[sequence[position - 1] - 1] += mass;
  });
  return marginal;
}

SquareMatrix<Rational> oracle_cross_covariance(const ExactDistribution& dist,
                                               int iota, int tau) {
  if (iota < 1 || iota >= tau || tau > dist.length()) {
    throw Error(ErrorCode::kBadPositions,
                "need 1 <= iota < tau <= " + std::to_string(dist.length()) +
                    ", got iota=" + std::to_string(iota) +
                    ", tau=" + std::to_string(tau));
  }
  const int k = dist.categories();
  SquareMatrix<Rational> joint(k);
  std::vector<Rational> left(k, Rational(0));
  std::vector<Rational> right(k, Rational(0));
  dist.for_each([&](std::span<const int> sequence, const Rational& mass) {
    const int i = sequence[iota - 1] - 1;
    const int j = sequence[tau - 1] - 1;
    joint(i, j) += mass;
    left[i] += mass;
    right[j] += mass;
  });
  SquareMatrix<Rational> result(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) result(i, j) = joint(i, j) - left[i] * right[j];
  }
  return result;
}

double oracle_mgf(const ExactDistribution& dist, std::span<const double> t) {
  const int k = dist.categories();
  if (static_cast<int>(t.size()) != k) {
    throw Error(ErrorCode::kOutOfRange, "mgf argument has the wrong length");
  }
  long double total = 0.0L;
  for (const auto& [histogram, mass] : oracle_count_distribution(dist)) {
    long double exponent = 0.0L;
    for (int i = 0; i < k; ++i) exponent += histogram[i] * (long double)t[i];
    total += static_cast<long double>(to_double(mass)) * std::exp(exponent);
  }
  return static_cast<double>(total);
}

}  // namespace dcrv
