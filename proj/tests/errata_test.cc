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

#include <gtest/gtest.h>

#include <algorithm>

#include "dcrv/distribution.h"
#include "dcrv/error.h"
#include "test_support.h"

namespace dcrv {
namespace {

ExactModel skewed(const Rational& delta) {
  return new_exact_model({Rational(1, 5), Rational(3, 10), Rational(1, 2)},
                         delta);
}

TEST(ErrataReportTest, ImplementedFormsMatchOracle) {
  SplitMix64 rng(201);
  for (int n = 1; n <= 5; ++n) {
    const ErrataReport report = errata_report(testing::random_exact_model(rng, 3), n);
    EXPECT_TRUE(report.implemented_forms_match()) << report.to_json().dump();
    EXPECT_EQ(report.find("pmf").max_deviation, 0.0);
    EXPECT_EQ(report.find("pmf").tolerance, 0.0);
    EXPECT_EQ(report.find("cross_covariance").exact_deviation, "0");
    EXPECT_LE(report.find("mgf").max_deviation, kFloatingTolerance);
  }
}

TEST(ErrataReportTest, PrintedCovarianceGapsAtPerfectDependence) {
  const ExactModel model =
      new_exact_model({Rational(1, 2), Rational(1, 2)}, Rational(1));
  const ErrataReport report = errata_report(model, 3);
  const FormulaCheck& printed = report.find("covariance_paper_printed");
  EXPECT_FALSE(printed.matches);
  EXPECT_EQ(printed.variant, "paper_printed");
  // Diagonal: 7/4 against 9/4. Off-diagonal: -3/4 against -9/4.
  EXPECT_EQ(printed.exact_deviation, "3/2");
  EXPECT_DOUBLE_EQ(printed.max_deviation, 1.5);
  const auto printed_sigma = covariance(model, 3, FormulaSource::kPaperPrinted);
  const auto verified_sigma =
      covariance(model, 3, FormulaSource::kOracleVerified);
  EXPECT_EQ(verified_sigma(0, 0) - printed_sigma(0, 0), Rational(1, 2));
  EXPECT_EQ(printed_sigma(0, 1) - verified_sigma(0, 1), Rational(3, 2));
  const FormulaCheck& verified = report.find("covariance_oracle_verified");
  EXPECT_TRUE(verified.matches);
  EXPECT_EQ(verified.exact_deviation, "0");
}

TEST(ErrataReportTest, EverythingAgreesWithoutDependence) {
  const ErrataReport report = errata_report(skewed(Rational(0)), 4);
  for (const FormulaCheck& check : report.checks) {
    EXPECT_TRUE(check.matches) << check.name;
  }
}

TEST(ErrataReportTest, StatementPairingFailsUnderDependence) {
  const ErrataReport report = errata_report(skewed(Rational(2, 5)), 3);
  EXPECT_FALSE(report.find("marginal_statement_pairing").matches);
  EXPECT_TRUE(report.find("marginal_proof_pairing").matches);
  EXPECT_FALSE(report.find("covariance_paper_printed").matches);
  EXPECT_FALSE(report.find("correlation_printed_closed_form").matches);
}

TEST(ErrataReportTest, UnknownNameThrows) {
  const ErrataReport report = errata_report(skewed(Rational(1, 2)), 2);
  EXPECT_THROW(report.find("no_such_formula"), Error);
}

TEST(ErrataReportTest, JsonShape) {
  const ErrataReport report = errata_report(skewed(Rational(1, 2)), 3);
  const nlohmann::json j = report.to_json();
  ASSERT_TRUE(j.contains("formulas"));
  for (const char* name :
       {"pmf", "marginal_proof_pairing", "marginal_statement_pairing", "mgf",
        "mean", "covariance_oracle_verified", "covariance_paper_printed",
        "correlation_oracle_verified", "correlation_paper_printed",
        "correlation_printed_closed_form", "cross_covariance"}) {
    ASSERT_TRUE(j["formulas"].contains(name)) << name;
    const auto& entry = j["formulas"][name];
    EXPECT_TRUE(entry["verdict"] == "match" || entry["verdict"] == "mismatch");
    EXPECT_TRUE(entry.contains("max_deviation"));
    EXPECT_TRUE(entry.contains("probe_grid"));
  }
}

TEST(StatementPairingTest, AgreesWithProofPairingOnlyWithoutDependence) {
  const ExactModel independent = skewed(Rational(0));
  const ExactModel dependent = skewed(Rational(1, 2));
  for (int k = 0; k <= 3; ++k) {
    EXPECT_EQ(statement_pairing_marginal(independent, 3, 1, k),
              marginal_pmf(independent, 3, 1, k));
  }
  bool differs = false;
  for (int k = 0; k <= 3; ++k) {
    differs |= statement_pairing_marginal(dependent, 3, 1, k) !=
               marginal_pmf(dependent, 3, 1, k);
  }
  EXPECT_TRUE(differs);
}

TEST(MgfProbeTest, StartsAtOriginAndIsSeeded) {
  const auto points = mgf_probe_points(3, 10, 7);
  ASSERT_EQ(points.size(), 11u);
  EXPECT_EQ(points[0], (std::vector<double>{0, 0, 0}));
  for (const auto& t : points) {
    for (double value : t) {
      EXPECT_GE(value, -0.5);
      EXPECT_LE(value, 0.5);
    }
  }
  EXPECT_EQ(points, mgf_probe_points(3, 10, 7));
}

TEST(VerifyModelTest, PassesAndRecordsPrintedMismatches) {
  const VerificationReport report = verify_model(skewed(Rational(2, 5)), 4);
  EXPECT_TRUE(report.passed);
  ASSERT_EQ(report.errata.size(), 4u);
  ASSERT_EQ(report.invariants.size(), 4u);
  for (const auto& checks : report.invariants) {
    for (const InvariantCheck& check : checks) {
      EXPECT_TRUE(check.passed) << check.name << ": " << check.detail;
    }
  }
  const nlohmann::json j = report.to_json();
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["lengths"].size(), 4u);
  EXPECT_FALSE(j["printed_form_mismatches"].empty());
}

TEST(VerifyModelTest, InvariantNames) {
  const VerificationReport report = verify_model(skewed(Rational(1, 3)), 2);
  std::vector<std::string> names;
  for (const auto& check : report.invariants[1]) names.push_back(check.name);
  for (const char* expected :
       {"normalization", "conditional_identities", "identical_marginals",
        "zero_row_sums", "interval_partition", "descent_recovers_sequence"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), expected), names.end())
        << expected;
  }
}

TEST(VerifyModelTest, EnumerationCap) {
  try {
    verify_model(skewed(Rational(1, 3)), 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEnumerationTooLarge);
  }
}

}  // namespace
}  // namespace dcrv
