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

#include "cli.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dcrv::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string error_name(const Result& result) {
  return nlohmann::json::parse(result.err)["error"].get<std::string>();
}

TEST(CliSampleTest, JsonArrayOfSequences) {
  const Result r = invoke({"sample", "--p", "0.2,0.3,0.5", "--delta", "0.4",
                           "--n", "5", "--count", "4", "--seed", "7"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 4u);
  for (const auto& sequence : j) {
    ASSERT_EQ(sequence.size(), 5u);
    for (const auto& entry : sequence) {
      EXPECT_GE(entry.get<int>(), 1);
      EXPECT_LE(entry.get<int>(), 3);
    }
  }
}

TEST(CliSampleTest, DeterministicAndCsv) {
  const std::vector<std::string> args = {"sample", "--p", "0.5,0.5", "--delta",
                                         "0.3", "--n", "3", "--count", "10",
                                         "--seed", "11"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
  auto csv = args;
  csv.insert(csv.end(), {"--format", "csv"});
  const Result r = invoke(csv);
  ASSERT_EQ(r.code, kSuccess);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 10);
  const auto j = nlohmann::json::parse(invoke(args).out);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, std::to_string(j[0][0].get<int>()) + "," +
                      std::to_string(j[0][1].get<int>()) + "," +
                      std::to_string(j[0][2].get<int>()));
}

TEST(CliSampleTest, ZeroCountIsEmptyArray) {
  const Result r = invoke({"sample", "--p", "0.5,0.5", "--delta", "0", "--n",
                           "2", "--count", "0"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_EQ(r.out, "[]\n");
}

TEST(CliPmfTest, SingleCountVector) {
  const Result r = invoke({"pmf", "--p", "0.5,0.5", "--delta", "0", "--n", "2",
                           "--counts", "1,1"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["probability"].get<double>(), 0.5);
  EXPECT_EQ(j["n"].get<int>(), 2);
  EXPECT_EQ(j["counts"], nlohmann::json::array({1, 1}));
}

TEST(CliPmfTest, TableSumsToOne) {
  const Result r = invoke({"pmf", "--p", "0.2,0.3,0.5", "--delta", "0.4",
                           "--n", "6", "--table"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 28u);
  double total = 0.0;
  for (const auto& row : j["rows"]) total += row["probability"].get<double>();
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(j["total"].get<double>(), 1.0, 1e-12);
}

TEST(CliPmfTest, TableCsvQuotesCounts) {
  const Result r = invoke({"pmf", "--p", "0.4,0.6", "--delta", "0.3", "--n",
                           "1", "--table", "--format", "csv"});
  ASSERT_EQ(r.code, kSuccess);
  EXPECT_EQ(r.out, "counts,probability\n\"1,0\",0.40000000000000002\n"
                   "\"0,1\",0.59999999999999998\n");
}

TEST(CliPmfTest, CountsAndTableAreExclusive) {
  const Result both = invoke({"pmf", "--p", "0.5,0.5", "--delta", "0", "--n",
                              "2", "--counts", "1,1", "--table"});
  EXPECT_EQ(both.code, kInvalidInput);
  EXPECT_EQ(error_name(both), "InvalidCounts");
  const Result neither =
      invoke({"pmf", "--p", "0.5,0.5", "--delta", "0", "--n", "2"});
  EXPECT_EQ(neither.code, kInvalidInput);
}

TEST(CliMomentsTest, OracleVerifiedAndPrinted) {
  const std::vector<std::string> base = {"moments", "--p", "0.5,0.5",
                                         "--delta", "1", "--n", "3"};
  const auto verified = nlohmann::json::parse(invoke(base).out);
  EXPECT_EQ(verified["covariance"][0][0].get<double>(), 2.25);
  EXPECT_EQ(verified["formula_source"], "oracle_verified");
  EXPECT_EQ(verified["mean"], nlohmann::json::array({1.5, 1.5}));
  auto printed_args = base;
  printed_args.push_back("--printed-formulas");
  const auto printed = nlohmann::json::parse(invoke(printed_args).out);
  EXPECT_EQ(printed["covariance"][0][0].get<double>(), 1.75);
  EXPECT_EQ(printed["formula_source"], "paper_printed");
}

TEST(CliMomentsTest, CsvLayout) {
  const Result r = invoke({"moments", "--p", "0.5,0.5", "--delta", "0", "--n",
                           "4", "--format", "csv"});
  ASSERT_EQ(r.code, kSuccess);
  EXPECT_EQ(r.out.rfind("quantity,row,col,value\n", 0), 0u);
  EXPECT_NE(r.out.find("covariance,1,1,1\n"), std::string::npos);
}

TEST(CliMomentsTest, BinaryCorrelationDegenerates) {
  const Result r = invoke({"moments", "--p", "1,0", "--delta", "0", "--n",
                           "2"});
  EXPECT_EQ(r.code, kInvalidInput);
}

TEST(CliVerifyTest, PassesWithMismatchesRecorded) {
  const Result r =
      invoke({"verify", "--p", "0.2,0.3,0.5", "--delta", "0.4", "--max-n", "3"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["max_n"].get<int>(), 3);
  EXPECT_EQ(j["lengths"].size(), 3u);
  EXPECT_EQ(j["model"]["p"], nlohmann::json::array({"1/5", "3/10", "1/2"}));
}

TEST(CliVerifyTest, EnumerationCapExitsThree) {
  const Result r =
      invoke({"verify", "--p", "0.2,0.3,0.5", "--delta", "0.4", "--max-n", "20"});
  EXPECT_EQ(r.code, kResourceCap);
  EXPECT_EQ(error_name(r), "EnumerationTooLarge");
}

TEST(CliGofTest, ReportShapeAndDeterminism) {
  const std::vector<std::string> args = {"gof", "--p", "0.2,0.3,0.5",
                                         "--delta", "0.4", "--n", "4",
                                         "--samples", "20000", "--seed", "5"};
  const Result r = invoke(args);
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(r.out, invoke(args).out);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["report"]["samples"].get<int>(), 20000);
  EXPECT_EQ(j["cells"].size(), 15u);
  EXPECT_GT(j["report"]["p_value"].get<double>(), 1e-4);
}

TEST(CliErrorTest, ValidationFailuresExitTwo) {
  const struct {
    std::vector<std::string> args;
    const char* name;
  } cases[] = {
      {{"sample", "--p", "0.5,0.6", "--delta", "0", "--n", "2"}, "SumNotOne"},
      {{"sample", "--p", "0.5,0.5", "--delta", "1.5", "--n", "2"}, "OutOfRange"},
      {{"sample", "--p", "1", "--delta", "0", "--n", "2"}, "TooFewCategories"},
      {{"sample", "--p", "0.5,0.5", "--delta", "0"}, "UsageError"},
      {{"sample", "--p", "0.5,0.5", "--delta", "0", "--n", "2", "--format",
        "xml"},
       "UsageError"},
      {{"pmf", "--p", "0.5,0.5", "--delta", "0", "--n", "2", "--counts", "3,0"},
       "InvalidCounts"},
      {{"bogus"}, "UsageError"},
  };
  for (const auto& c : cases) {
    const Result r = invoke(c.args);
    EXPECT_EQ(r.code, kInvalidInput) << c.name;
    EXPECT_EQ(error_name(r), c.name);
    EXPECT_TRUE(r.out.empty());
  }
}

TEST(CliErrorTest, TableCapExitsThree) {
  const Result r = invoke({"pmf", "--p", "0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1",
                           "--delta", "0.2", "--n", "40", "--table"});
  EXPECT_EQ(r.code, kResourceCap);
  EXPECT_EQ(error_name(r), "TableTooLarge");
}

TEST(CliRenormalizeTest, LooseToleranceOnlyWithFlag) {
  const std::vector<std::string> args = {"pmf", "--p", "0.3333333,0.3333333,0.3333333",
                                         "--delta", "0", "--n", "1",
                                         "--counts", "1,0,0"};
  EXPECT_EQ(invoke(args).code, kInvalidInput);
  auto loose = args;
  loose.push_back("--renormalize");
  const Result r = invoke(loose);
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["probability"].get<double>(),
              1.0 / 3, 1e-15);
}

TEST(CliOutputTest, WritesFileInsteadOfStdout) {
  const auto path =
      std::filesystem::temp_directory_path() / "dcrv_cli_test_output.json";
  std::filesystem::remove(path);
  const Result r = invoke({"sample", "--p", "0.5,0.5", "--delta", "0.2", "--n",
                           "2", "--count", "3", "--output", path.string()});
  ASSERT_EQ(r.code, kSuccess);
  EXPECT_TRUE(r.out.empty());
  std::ifstream file(path);
  std::stringstream contents;
  contents << file.rdbuf();
  EXPECT_EQ(nlohmann::json::parse(contents.str()).size(), 3u);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace dcrv::cli
