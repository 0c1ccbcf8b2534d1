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

#include "dcrv/sampler.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dcrv/error.h"

namespace dcrv {
namespace {

// Right endpoints of the K cells of [0,1); the last is pinned to exactly 1
// so every u < 1 finds a cell.
template <typename Scalar>
std::vector<Scalar> cumulative(const std::vector<Scalar>& weights) {
  std::vector<Scalar> out(weights.size());
  Scalar running(0);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    running += weights[j];
    out[j] = running;
  }
  out.back() = Scalar(1);
  return out;
}

// 0-based index of the cell [points[j-1], points[j]) holding u.
template <typename Scalar>
int locate(const std::vector<Scalar>& points, const Scalar& u) {
  const auto it = std::upper_bound(points.begin(), points.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(
      it - points.begin(), static_cast<std::ptrdiff_t>(points.size()) - 1));
}

template <typename Scalar>
CategorySequence descend(const BasicModel<Scalar>& model, int n,
                         const Scalar& u, DescentTrace* trace) {
  const int k = model.categories();
  CategorySequence sequence;
  sequence.reserve(n);

  const std::vector<Scalar> level_one = cumulative(model.probabilities());
  int cell = locate(level_one, u);
  Scalar lo = cell == 0 ? Scalar(0) : level_one[cell - 1];
  Scalar hi = level_one[cell];
  sequence.push_back(cell + 1);
  if (trace != nullptr) {
    trace->lo.push_back(to_double(lo));
    trace->hi.push_back(to_double(hi));
  }

  const std::vector<Scalar> conditional =
      cumulative(conditional_probs(model, cell + 1).probs);
  std::vector<Scalar> points(k);
  for (int level = 2; level <= n; ++level) {
    const Scalar length = hi - lo;
    for (int j = 0; j + 1 < k; ++j) points[j] = lo + length * conditional[j];
    points[k - 1] = hi;
    cell = locate(points, u);
    if (cell > 0) lo = points[cell - 1];
    hi = points[cell];
    sequence.push_back(cell + 1);
    if (trace != nullptr) {
      trace->lo.push_back(to_double(lo));
      trace->hi.push_back(to_double(hi));
    }
  }
  return sequence;
}

void check_length(int n) {
  if (n < 1) {
    throw Error(ErrorCode::kOutOfRange,
                "sequence length must be >= 1, got " + std::to_string(n));
  }
}

}  // namespace

void validate_sequence(std::span<const int> sequence, int categories) {
  if (sequence.empty()) {
    throw Error(ErrorCode::kInvalidSequence, "sequence is empty");
  }
  for (std::size_t j = 0; j < sequence.size(); ++j) {
    if (sequence[j] < 1 || sequence[j] > categories) {
      throw Error(ErrorCode::kInvalidSequence,
                  "entry " + std::to_string(j + 1) + " = " +
                      std::to_string(sequence[j]) + " is not in 1.." +
                      std::to_string(categories));
    }
  }
}

template <typename Scalar>
Scalar sequence_probability(const BasicModel<Scalar>& model,
                            std::span<const int> sequence) {
  validate_sequence(sequence, model.categories());
  const int first = sequence[0];
  const Scalar plus = model.p_plus(first);
  Scalar result = model.p(first);
  for (std::size_t j = 1; j < sequence.size(); ++j) {
    result *= sequence[j] == first ? plus : model.p_minus(sequence[j]);
  }
  return result;
}

std::uint64_t lex_index(std::span<const int> sequence, int categories) {
  validate_sequence(sequence, categories);
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const auto base = static_cast<std::uint64_t>(categories);
  std::uint64_t offset = 0;
  for (int entry : sequence) {
    if (offset > (kMax - (base - 1)) / base) {
      throw Error(ErrorCode::kSequenceTooLong,
                  "lexicographic index does not fit in 64 bits");
    }
    offset = offset * base + static_cast<std::uint64_t>(entry - 1);
  }
  if (offset == kMax) {
    throw Error(ErrorCode::kSequenceTooLong,
                "lexicographic index does not fit in 64 bits");
  }
  return offset + 1;
}

CategorySequence lex_sequence(std::uint64_t index, int categories, int n) {
  check_length(n);
  if (categories < 2) {
    throw Error(ErrorCode::kTooFewCategories, "need at least 2 categories");
  }
  const auto base = static_cast<std::uint64_t>(categories);
  if (index < 1) {
    throw Error(ErrorCode::kIndexOutOfRange, "lexicographic index starts at 1");
  }
  std::uint64_t offset = index - 1;
  CategorySequence sequence(n);
  for (int j = n - 1; j >= 0; --j) {
    sequence[j] = static_cast<int>(offset % base) + 1;
    offset /= base;
  }
  if (offset != 0) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "index " + std::to_string(index) + " exceeds K^n");
  }
  return sequence;
}

SequenceInterval sequence_interval(const ExactModel& model,
                                   std::span<const int> sequence,
                                   int max_length) {
  validate_sequence(sequence, model.categories());
  if (static_cast<int>(sequence.size()) > max_length) {
    throw Error(ErrorCode::kSequenceTooLong,
                "length " + std::to_string(sequence.size()) +
                    " exceeds the cap of " + std::to_string(max_length));
  }
  SequenceInterval interval;
  interval.lex_index = lex_index(sequence, model.categories());

  Rational lo(0);
  Rational length(1);
  const auto& p = model.probabilities();
  for (int j = 0; j + 1 < sequence[0]; ++j) lo += p[j];
  length = p[sequence[0] - 1];

  const auto conditional = conditional_probs(model, sequence[0]).probs;
  for (std::size_t r = 1; r < sequence.size(); ++r) {
    Rational below(0);
    for (int j = 0; j + 1 < sequence[r]; ++j) below += conditional[j];
    lo += length * below;
    length *= conditional[sequence[r] - 1];
  }
  interval.lo = lo;
  interval.hi = lo + length;
  return interval;
}

CategorySequence sample_inverse(const Model& model, int n, double u,
                                DescentTrace* trace) {
  check_length(n);
  if (!(u >= 0.0 && u < 1.0)) {
    throw Error(ErrorCode::kUOutOfRange, "u must lie in [0,1)");
  }
  if (trace != nullptr) {
    trace->lo.clear();
    trace->hi.clear();
  }
  return descend(model, n, u, trace);
}

CategorySequence sample_inverse_exact(const ExactModel& model, int n,
                                      const Rational& u) {
  check_length(n);
  if (!(u >= 0 && u < 1)) {
    throw Error(ErrorCode::kUOutOfRange, "u must lie in [0,1)");
  }
  return descend(model, n, u, nullptr);
}

std::vector<CategorySequence> sample_many(const Model& model, int n,
                                          std::size_t count,
                                          std::uint64_t seed) {
  check_length(n);
  SplitMix64 rng(seed);
  std::vector<CategorySequence> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    out.push_back(descend(model, n, rng.uniform(), nullptr));
  }
  return out;
}

CategorySequence sample_sequential(const Model& model, int n,
                                   SplitMix64& rng) {
  check_length(n);
  CategorySequence sequence;
  sequence.reserve(n);
  const int first = locate(cumulative(model.probabilities()), rng.uniform()) + 1;
  sequence.push_back(first);
  const auto conditional = cumulative(conditional_probs(model, first).probs);
  for (int j = 1; j < n; ++j) {
    sequence.push_back(locate(conditional, rng.uniform()) + 1);
  }
  return sequence;
}

std::vector<int> counts(std::span<const int> sequence, int categories) {
  validate_sequence(sequence, categories);
  std::vector<int> histogram(categories, 0);
  for (int entry : sequence) ++histogram[entry - 1];
  return histogram;
}

template double sequence_probability(const Model&, std::span<const int>);
template Rational sequence_probability(const ExactModel&,
                                       std::span<const int>);

}  // namespace dcrv
