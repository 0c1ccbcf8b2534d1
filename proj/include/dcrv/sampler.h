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

#ifndef DCRV_SAMPLER_H_
#define DCRV_SAMPLER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dcrv/params.h"
#include "dcrv/random.h"

namespace dcrv {

// Outcome e = (e_1..e_n), entries 1-based categories.
using CategorySequence = std::vector<int>;

inline constexpr int kDefaultMaxIntervalLength = 256;

// Throws kInvalidSequence for an empty sequence or an entry outside 1..K.
void validate_sequence(std::span<const int> sequence, int categories);

// p_{e_1} * prod_{j>=2} c_{e_1}(e_j), where c_{e_1} is the conditional
// vector fixed by the first outcome.
template <typename Scalar>
Scalar sequence_probability(const BasicModel<Scalar>& model,
                            std::span<const int> sequence);

// 1-based lexicographic rank: 1 + sum_j (e_j - 1) K^(n-j).
// Throws kSequenceTooLong when K^n does not fit in 64 bits.
std::uint64_t lex_index(std::span<const int> sequence, int categories);
CategorySequence lex_sequence(std::uint64_t index, int categories, int n);

// [lo, hi) with hi - lo equal to the sequence probability and lo the total
// mass of every lexicographically smaller sequence.
struct SequenceInterval {
  std::uint64_t lex_index = 0;
  Rational lo;
  Rational hi;
};

SequenceInterval sequence_interval(const ExactModel& model,
                                   std::span<const int> sequence,
                                   int max_length = kDefaultMaxIntervalLength);

// Search interval after each level of the descent; level r holds [lo, hi)
// after the r-th entry was chosen.
struct DescentTrace {
  std::vector<double> lo;
  std::vector<double> hi;
};

// Inverse-CDF generation by descending the K-ary tree: level 1 partitions
// [0,1) by the cumulative base probabilities, every later level partitions
// the current interval by its length times the cumulative conditional
// vector of the first outcome. Partition points are located with binary
// search; u on a boundary belongs to the right-hand interval.
// Throws kUOutOfRange unless 0 <= u < 1.
CategorySequence sample_inverse(const Model& model, int n, double u,
                                DescentTrace* trace = nullptr);

// Exact-arithmetic descent, used to check the floating path.
CategorySequence sample_inverse_exact(const ExactModel& model, int n,
                                      const Rational& u);

// Element j is sample_inverse applied to the j-th uniform of a SplitMix64
// stream seeded with `seed`.
std::vector<CategorySequence> sample_many(const Model& model, int n,
                                          std::size_t count,
                                          std::uint64_t seed);

// Draws e_1 from p, then each later entry independently from the
// conditional vector of e_1, consuming one uniform per entry.
CategorySequence sample_sequential(const Model& model, int n, SplitMix64& rng);

std::vector<int> counts(std::span<const int> sequence, int categories);

}  // namespace dcrv

#endif  // DCRV_SAMPLER_H_
