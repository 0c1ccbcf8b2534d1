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

#ifndef DCRV_ERRATA_H_
#define DCRV_ERRATA_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dcrv/oracle.h"
#include "dcrv/params.h"

namespace dcrv {

// Compares every closed form against exhaustive enumeration at one length.
//
// Two kinds of formula are checked. "implemented" forms are the ones the
// library computes and must agree with enumeration. "paper_printed" forms are
// alternative published expressions (the covariance and correlation with the
// single delta term, and the generalized binomial marginal with q^+ and q^-
// swapped); they are evaluated only here and are expected to disagree.

inline constexpr double kFloatingTolerance = 1e-12;

struct FormulaCheck {
  std::string name;
  std::string variant;  // "implemented" or "paper_printed"
  double max_deviation = 0.0;
  // Exact deviation as "num/den" when the comparison ran in rationals.
  std::string exact_deviation;
  double tolerance = 0.0;  // 0 means exact equality was required
  bool matches = false;
  std::string probe_grid;
};

struct ErrataReport {
  int n = 0;
  int categories = 0;
  std::vector<FormulaCheck> checks;

  const FormulaCheck& find(const std::string& name) const;
  bool implemented_forms_match() const;
  nlohmann::json to_json() const;
};

// Deterministic mgf probe points: t = 0 plus `random_probes` vectors with
// entries uniform in [-0.5, 0.5] drawn from SplitMix64(seed).
std::vector<std::vector<double>> mgf_probe_points(int categories,
                                                  int random_probes,
                                                  std::uint64_t seed);

// The marginal with the q^+ / q^- pairing swapped relative to marginal_pmf.
Rational statement_pairing_marginal(const ExactModel& model, int n,
                                    int category, int k);

// Throws kEnumerationTooLarge when K^n exceeds `cap`.
ErrataReport errata_report(const ExactModel& model, int n,
                           std::uint64_t cap = kDefaultEnumerationCap);

struct InvariantCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<ErrataReport> errata;                  // one per n = 1..max_n
  std::vector<std::vector<InvariantCheck>> invariants;  // same indexing
  bool passed = false;
  nlohmann::json to_json() const;
};

// Sequence-level invariants (interval partition, exact descent) are checked
// only when K^n is at most this many sequences.
inline constexpr std::uint64_t kIntervalCheckLimit = 20'000;

// Runs errata_report and the invariant suite for n = 1..max_n. `passed` is
// true iff every implemented form matches and every invariant holds.
VerificationReport verify_model(const ExactModel& model, int max_n,
                                std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace dcrv

#endif  // DCRV_ERRATA_H_
