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

#include "dcrv/errata.h"

#include <cmath>
#include <sstream>

#include "dcrv/distribution.h"
#include "dcrv/error.h"
#include "dcrv/random.h"
#include "dcrv/sampler.h"

namespace dcrv {
namespace {

// Accumulates |closed form - oracle| over a probe grid.
class Deviation {
 public:
  void add(const Rational& closed_form, const Rational& oracle) {
    const Rational gap = abs(Rational(closed_form - oracle));
    if (gap > exact_) exact_ = gap;
    exact_used_ = true;
  }
  void add(double closed_form, double oracle) {
    const double gap = std::fabs(closed_form - oracle);
    if (!(gap <= floating_)) floating_ = gap;  // NaN sticks
  }

  FormulaCheck finish(std::string name, std::string variant,
                      std::string probe_grid) const {
    FormulaCheck check;
    check.name = std::move(name);
    check.variant = std::move(variant);
    check.probe_grid = std::move(probe_grid);
    if (exact_used_) {
      check.max_deviation = to_double(exact_);
      check.exact_deviation = to_string(exact_);
      check.tolerance = 0.0;
      check.matches = is_zero(exact_);
    } else {
      check.max_deviation = floating_;
      check.tolerance = kFloatingTolerance;
      check.matches = floating_ <= kFloatingTolerance;
    }
    return check;
  }

 private:
  Rational exact_{0};
  bool exact_used_ = false;
  double floating_ = 0.0;
};

std::string describe_grid(const std::string& what, int n) {
  std::ostringstream out;
  out << what << " at n=" << n;
  return out.str();
}

SquareMatrix<double> correlation_of(const SquareMatrix<Rational>& sigma) {
  const int k = sigma.size();
  SquareMatrix<double> rho(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      rho(i, j) = i == j ? 1.0
                         : to_double(sigma(i, j)) /
                               std::sqrt(to_double(sigma(i, i)) *
                                         to_double(sigma(j, j)));
    }
  }
  return rho;
}

// The correlation expression as published, not derived from any covariance.
double printed_correlation(const Model& model, int n, int i, int j) {
  const double pi = model.p(i);
  const double pj = model.p(j);
  const double d = model.delta();
  const double ratio = (n - d * (n - 1) * (n - 2)) /
                       (n + d * (n - 1) + d * d * (n - 1) * (n - 2));
  return -std::sqrt(pi * pj / ((1 - pi) * (1 - pj))) * ratio;
}

InvariantCheck invariant(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

std::vector<InvariantCheck> check_invariants(const ExactModel& model,
                                             const ExactDistribution& dist) {
  const int n = dist.length();
  const int k = dist.categories();
  std::vector<InvariantCheck> out;

  Rational total(0);
  for (const auto& mass : dist.masses()) total += mass;
  out.push_back(invariant("normalization", total == 1,
                          "sum of sequence masses = " + to_string(total)));

  const auto identities = check_identities(model);
  out.push_back(invariant(
      "conditional_identities",
      identities.total_mass_holds && identities.marginal_holds,
      "residuals " + to_string(identities.total_mass_residual) + ", " +
          to_string(identities.marginal_residual)));

  bool identical = true;
  for (int r = 1; r <= n; ++r) {
    identical = identical &&
                oracle_position_marginal(dist, r) == model.probabilities();
  }
  out.push_back(invariant("identical_marginals", identical,
                          "P(e_r = i) = p_i for r = 1.." + std::to_string(n)));

  bool zero_sums = true;
  for (int iota = 1; iota <= n; ++iota) {
    for (int tau = iota + 1; tau <= n; ++tau) {
      const auto lambda = cross_covariance(model, iota, tau).entries;
      for (int i = 0; i < k; ++i) {
        Rational row(0), col(0);
        for (int j = 0; j < k; ++j) {
          row += lambda(i, j);
          col += lambda(j, i);
        }
        zero_sums = zero_sums && is_zero(row) && is_zero(col);
      }
    }
  }
  const auto sigma = covariance(model, n, FormulaSource::kOracleVerified);
  for (int i = 0; i < k; ++i) {
    Rational row(0);
    for (int j = 0; j < k; ++j) row += sigma(i, j);
    zero_sums = zero_sums && is_zero(row);
  }
  out.push_back(invariant("zero_row_sums", zero_sums,
                          "cross-covariance and covariance rows sum to 0"));

  if (dist.masses().size() <= kIntervalCheckLimit) {
    bool partition = true;
    bool descent = true;
    Rational cursor(0);
    dist.for_each([&](std::span<const int> sequence, const Rational& mass) {
      const auto interval = sequence_interval(model, sequence);
      partition = partition && interval.lo == cursor &&
                  interval.hi - interval.lo == mass;
      cursor = interval.hi;
      if (sgn(mass) > 0) {
        const Rational midpoint = (interval.lo + interval.hi) / 2;
        const auto found = sample_inverse_exact(model, n, midpoint);
        descent = descent &&
                  std::equal(found.begin(), found.end(), sequence.begin());
      }
    });
    partition = partition && cursor == 1;
    out.push_back(invariant("interval_partition", partition,
                            "sequence intervals tile [0,1) in lex order"));
    out.push_back(invariant("descent_recovers_sequence", descent,
                            "exact descent at every interval midpoint"));
  }
  return out;
}

}  // namespace

const FormulaCheck& ErrataReport::find(const std::string& name) const {
  for (const auto& check : checks) {
    if (check.name == name) return check;
  }
  throw Error(ErrorCode::kOutOfRange, "no formula named " + name);
}

bool ErrataReport::implemented_forms_match() const {
  for (const auto& check : checks) {
    if (check.variant == "implemented" && !check.matches) return false;
  }
  return true;
}

nlohmann::json ErrataReport::to_json() const {
  nlohmann::json formulas = nlohmann::json::object();
  for (const auto& check : checks) {
    nlohmann::json entry = {
        {"max_deviation", check.max_deviation},
        {"verdict", check.matches ? "match" : "mismatch"},
        {"probe_grid", check.probe_grid},
        {"variant", check.variant},
        {"tolerance", check.tolerance},
    };
    if (!check.exact_deviation.empty()) {
      entry["exact_deviation"] = check.exact_deviation;
    }
    formulas[check.name] = std::move(entry);
  }
  return {{"n", n}, {"categories", categories}, {"formulas", formulas}};
}

std::vector<std::vector<double>> mgf_probe_points(int categories,
                                                  int random_probes,
                                                  std::uint64_t seed) {
  std::vector<std::vector<double>> points;
  points.emplace_back(categories, 0.0);
  SplitMix64 rng(seed);
  for (int probe = 0; probe < random_probes; ++probe) {
    std::vector<double> t(categories);
    for (auto& value : t) value = rng.uniform() - 0.5;
    points.push_back(std::move(t));
  }
  return points;
}

Rational statement_pairing_marginal(const ExactModel& model, int n,
                                    int category, int k) {
  const auto collapsed = marginal_params(model, category);
  Rational result(0);
  if (k <= n - 1) {
    result += collapsed.q * Rational(binomial(n - 1, k)) *
              ipow(model.p_minus(category), k) *
              ipow(collapsed.q_minus, n - 1 - k);
  }
  if (k >= 1) {
    result += model.p(category) * Rational(binomial(n - 1, k - 1)) *
              ipow(model.p_plus(category), k - 1) *
              ipow(collapsed.q_plus, n - k);
  }
  return result;
}

ErrataReport errata_report(const ExactModel& model, int n, std::uint64_t cap) {
  const ExactDistribution dist = enumerate_distribution(model, n, cap);
  const Model floating = to_floating(model);
  const int k = model.categories();
  const auto pushforward = oracle_count_distribution(dist);

  ErrataReport report;
  report.n = n;
  report.categories = k;

  Deviation pmf_gap;
  for (const auto& counts : compositions(n, k)) {
    const auto it = pushforward.find(counts);
    const Rational oracle = it == pushforward.end() ? Rational(0) : it->second;
    pmf_gap.add(pmf(model, n, counts), oracle);
  }
  report.checks.push_back(pmf_gap.finish(
      "pmf", "implemented", describe_grid("all compositions", n)));

  Deviation proof_gap;
  Deviation statement_gap;
  for (int i = 1; i <= k; ++i) {
    std::vector<Rational> oracle(n + 1, Rational(0));
    for (const auto& [counts, mass] : pushforward) oracle[counts[i - 1]] += mass;
    for (int x = 0; x <= n; ++x) {
      proof_gap.add(marginal_pmf(model, n, i, x), oracle[x]);
      statement_gap.add(statement_pairing_marginal(model, n, i, x), oracle[x]);
    }
  }
  const std::string marginal_grid =
      describe_grid("every category i and count 0..n", n);
  report.checks.push_back(
      proof_gap.finish("marginal_proof_pairing", "implemented", marginal_grid));
  report.checks.push_back(statement_gap.finish(
      "marginal_statement_pairing", "paper_printed", marginal_grid));

  Deviation mgf_gap;
  for (const auto& t : mgf_probe_points(k, 5, 0x5EEDULL)) {
    mgf_gap.add(mgf(floating, n, t), oracle_mgf(dist, t));
  }
  report.checks.push_back(mgf_gap.finish(
      "mgf", "implemented",
      describe_grid("t = 0 and 5 seeded points in [-0.5,0.5]^K", n)));

  const ExactMoments truth = oracle_moments(dist);
  Deviation mean_gap;
  const auto closed_mean = mean(model, n);
  for (int i = 0; i < k; ++i) mean_gap.add(closed_mean[i], truth.mean[i]);
  report.checks.push_back(
      mean_gap.finish("mean", "implemented", describe_grid("all categories", n)));

  const std::string matrix_grid = describe_grid("all K x K entries", n);
  const auto oracle_rho = correlation_of(truth.covariance);
  for (auto source : {FormulaSource::kOracleVerified,
                      FormulaSource::kPaperPrinted}) {
    const auto sigma = covariance(model, n, source);
    const auto rho = correlation(floating, n, source);
    Deviation cov_gap;
    Deviation rho_gap;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        cov_gap.add(sigma(i, j), truth.covariance(i, j));
        rho_gap.add(rho(i, j), oracle_rho(i, j));
      }
    }
    const std::string suffix(formula_source_name(source));
    const std::string variant =
        source == FormulaSource::kOracleVerified ? "implemented"
                                                 : "paper_printed";
    report.checks.push_back(
        cov_gap.finish("covariance_" + suffix, variant, matrix_grid));
    report.checks.push_back(
        rho_gap.finish("correlation_" + suffix, variant, matrix_grid));
  }

  Deviation printed_rho_gap;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double printed =
          i == j ? 1.0 : printed_correlation(floating, n, i + 1, j + 1);
      printed_rho_gap.add(printed, oracle_rho(i, j));
    }
  }
  report.checks.push_back(printed_rho_gap.finish(
      "correlation_printed_closed_form", "paper_printed", matrix_grid));

  Deviation cross_gap;
  int pairs = 0;
  for (int iota = 1; iota <= n; ++iota) {
    for (int tau = iota + 1; tau <= n; ++tau) {
      const auto closed = cross_covariance(model, iota, tau).entries;
      const auto oracle = oracle_cross_covariance(dist, iota, tau);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) cross_gap.add(closed(i, j), oracle(i, j));
      }
      ++pairs;
    }
  }
  if (pairs == 0) cross_gap.add(Rational(0), Rational(0));
  report.checks.push_back(cross_gap.finish(
      "cross_covariance", "implemented",
      describe_grid("all " + std::to_string(pairs) + " position pairs", n)));

  return report;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json lengths = nlohmann::json::array();
  nlohmann::json flagged = nlohmann::json::array();
  for (std::size_t idx = 0; idx < errata.size(); ++idx) {
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& check : invariants[idx]) {
      checks[check.name] = {{"passed", check.passed}, {"detail", check.detail}};
    }
    nlohmann::json entry = errata[idx].to_json();
    entry["invariants"] = std::move(checks);
    lengths.push_back(std::move(entry));
    for (const auto& check : errata[idx].checks) {
      if (check.variant == "paper_printed" && !check.matches) {
        flagged.push_back({{"formula", check.name},
                           {"n", errata[idx].n},
                           {"max_deviation", check.max_deviation}});
      }
    }
  }
  return {{"passed", passed},
          {"lengths", std::move(lengths)},
          {"printed_form_mismatches", std::move(flagged)}};
}

VerificationReport verify_model(const ExactModel& model, int max_n,
                                std::uint64_t cap) {
  if (max_n < 1) {
    throw Error(ErrorCode::kOutOfRange, "max_n must be >= 1");
  }
  std::uint64_t largest = 1;
  for (int n = 0; n < max_n; ++n) {
    const auto k = static_cast<std::uint64_t>(model.categories());
    if (largest > cap / k) {
      throw Error(ErrorCode::kEnumerationTooLarge,
                  "K^" + std::to_string(max_n) +
                      " sequences exceed the cap of " + std::to_string(cap));
    }
    largest *= k;
  }
  VerificationReport report;
  report.passed = true;
  for (int n = 1; n <= max_n; ++n) {
    report.errata.push_back(errata_report(model, n, cap));
    report.invariants.push_back(
        check_invariants(model, enumerate_distribution(model, n, cap)));
    report.passed = report.passed && report.errata.back().implemented_forms_match();
    for (const auto& check : report.invariants.back()) {
      report.passed = report.passed && check.passed;
    }
  }
  return report;
}

}  // namespace dcrv
