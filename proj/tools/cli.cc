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

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcrv/canonical_json.h"
#include "dcrv/distribution.h"
#include "dcrv/errata.h"
#include "dcrv/error.h"
#include "dcrv/montecarlo.h"
#include "dcrv/params.h"
#include "dcrv/sampler.h"

namespace dcrv::cli {
namespace {

using nlohmann::json;

constexpr double kRenormalizeTolerance = 1e-6;

struct RunConfig {
  std::string p;
  std::string delta;
  int n = 0;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
  bool renormalize = false;
};

struct CommandOptions {
  RunConfig config;
  std::uint64_t count = 1;
  std::string counts;
  bool table = false;
  bool printed_formulas = false;
  int max_n = 4;
  std::uint64_t samples = 100000;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) parts.push_back(item);
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::kOutOfRange, "not a number: '" + text + "'");
  }
  return value;
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text)) {
    int value = 0;
    const char* last = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(part.data(), last, value);
    if (ec != std::errc() || ptr != last) {
      throw Error(ErrorCode::kInvalidCounts, "not an integer: '" + part + "'");
    }
    out.push_back(value);
  }
  return out;
}

double tolerance(const RunConfig& config) {
  return config.renormalize ? kRenormalizeTolerance : kDefaultSumTolerance;
}

Model floating_model(const RunConfig& config) {
  std::vector<double> p;
  for (const auto& part : split(config.p)) p.push_back(parse_double(part));
  return new_model(std::move(p), parse_double(config.delta), tolerance(config));
}

// Exact ratios of the decimals as typed.
ExactModel exact_model(const RunConfig& config) {
  std::vector<Rational> p;
  for (const auto& part : split(config.p)) p.push_back(parse_decimal(part));
  return new_exact_model(std::move(p), parse_decimal(config.delta),
                         decimal_to_rational(tolerance(config)));
}

json model_json(const Model& model) {
  return {{"p", model.probabilities()}, {"delta", model.delta()}};
}

json matrix_json(const SquareMatrix<double>& matrix) {
  json rows = json::array();
  for (int i = 0; i < matrix.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < matrix.size(); ++j) row.push_back(matrix(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_counts(const std::vector<int>& counts) {
  std::string field = "\"";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i > 0) field += ',';
    field += std::to_string(counts[i]);
  }
  return field + "\"";
}

std::string join_ints(const std::vector<int>& values) {
  std::string row;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) row += ',';
    row += std::to_string(values[i]);
  }
  return row;
}

bool csv(const RunConfig& config) { return config.format == "csv"; }

std::string cmd_sample(const CommandOptions& options) {
  const Model model = floating_model(options.config);
  const auto sequences = sample_many(model, options.config.n, options.count,
                                     options.config.seed);
  if (csv(options.config)) {
    std::string text;
    for (const auto& sequence : sequences) text += join_ints(sequence) + "\n";
    return text;
  }
  return canonical_dump(json(sequences)) + "\n";
}

std::string cmd_pmf(const CommandOptions& options) {
  const Model model = floating_model(options.config);
  const int n = options.config.n;
  if (options.table == !options.counts.empty()) {
    throw Error(ErrorCode::kInvalidCounts,
                "pass exactly one of --counts and --table");
  }
  std::vector<PmfRow<double>> rows;
  if (options.table) {
    rows = pmf_table(model, n);
  } else {
    auto counts = parse_counts(options.counts);
    const double probability = pmf(model, n, counts);
    rows.push_back({std::move(counts), probability});
  }
  if (csv(options.config)) {
    std::string text = "counts,probability\n";
    for (const auto& row : rows) {
      text += csv_counts(row.counts) + "," + format_double(row.probability) +
              "\n";
    }
    return text;
  }
  if (!options.table) {
    return canonical_dump({{"n", n},
                           {"counts", rows[0].counts},
                           {"probability", rows[0].probability}}) +
           "\n";
  }
  json table = json::array();
  double total = 0.0;
  for (const auto& row : rows) {
    table.push_back({{"counts", row.counts}, {"probability", row.probability}});
    total += row.probability;
  }
  return canonical_dump({{"n", n},
                         {"model", model_json(model)},
                         {"rows", std::move(table)},
                         {"total", total}}) +
         "\n";
}

std::string cmd_moments(const CommandOptions& options) {
  const Model model = floating_model(options.config);
  const FormulaSource source = options.printed_formulas
                                   ? FormulaSource::kPaperPrinted
                                   : FormulaSource::kOracleVerified;
  const auto summary = moments(model, options.config.n, source);
  if (csv(options.config)) {
    std::string text = "quantity,row,col,value\n";
    for (std::size_t i = 0; i < summary.mean.size(); ++i) {
      text += "mean," + std::to_string(i + 1) + ",," +
              format_double(summary.mean[i]) + "\n";
    }
    for (const auto* name : {"covariance", "correlation"}) {
      const auto& matrix = std::string(name) == "covariance"
                               ? summary.covariance
                               : summary.correlation;
      for (int i = 0; i < matrix.size(); ++i) {
        for (int j = 0; j < matrix.size(); ++j) {
          text += std::string(name) + "," + std::to_string(i + 1) + "," +
                  std::to_string(j + 1) + "," + format_double(matrix(i, j)) +
                  "\n";
        }
      }
    }
    return text;
  }
  return canonical_dump(
             {{"n", options.config.n},
              {"model", model_json(model)},
              {"formula_source", std::string(formula_source_name(source))},
              {"mean", summary.mean},
              {"covariance", matrix_json(summary.covariance)},
              {"correlation", matrix_json(summary.correlation)}}) +
         "\n";
}

std::string cmd_verify(const CommandOptions& options, bool& passed) {
  const ExactModel model = exact_model(options.config);
  const auto report = verify_model(model, options.max_n);
  passed = report.passed;
  if (csv(options.config)) {
    std::string text = "n,formula,variant,max_deviation,verdict\n";
    for (const auto& errata : report.errata) {
      for (const auto& check : errata.checks) {
        text += std::to_string(errata.n) + "," + check.name + "," +
                check.variant + "," + format_double(check.max_deviation) + "," +
                (check.matches ? "match" : "mismatch") + "\n";
      }
    }
    return text;
  }
  json document = report.to_json();
  json p = json::array();
  for (const auto& value : model.probabilities()) p.push_back(to_string(value));
  document["model"] = {{"p", std::move(p)},
                       {"delta", to_string(model.delta())}};
  document["max_n"] = options.max_n;
  return canonical_dump(document) + "\n";
}

std::string cmd_gof(const CommandOptions& options) {
  const Model model = floating_model(options.config);
  if (options.samples < 1) {
    throw Error(ErrorCode::kOutOfRange, "--samples must be >= 1");
  }
  const auto trial = run_count_trial(model, options.config.n, options.samples,
                                     options.config.seed);
  if (csv(options.config)) {
    std::string text = "counts,expected_prob,observed\n";
    for (const auto& cell : trial.cells) {
      text += csv_counts(cell.counts) + "," + format_double(cell.expected_prob) +
              "," + std::to_string(cell.observed) + "\n";
    }
    return text;
  }
  json cells = json::array();
  for (const auto& cell : trial.cells) {
    cells.push_back({{"counts", cell.counts},
                     {"expected_prob", cell.expected_prob},
                     {"observed", cell.observed}});
  }
  const auto& r = trial.report;
  return canonical_dump({{"n", options.config.n},
                         {"seed", options.config.seed},
                         {"model", model_json(model)},
                         {"report",
                          {{"statistic", r.statistic},
                           {"dof", r.dof},
                           {"p_value", r.p_value},
                           {"samples", r.samples},
                           {"cells_merged", r.cells_merged}}},
                         {"cells", std::move(cells)}}) +
         "\n";
}

void add_common(CLI::App* command, RunConfig& config, bool needs_length) {
  command->add_option("--p", config.p, "Comma-separated base probabilities")
      ->required();
  command->add_option("--delta", config.delta, "Dependency coefficient in [0,1]")
      ->required();
  auto* length = command->add_option("--n", config.n, "Sequence length");
  if (needs_length) length->required();
  command->add_option("--seed", config.seed, "SplitMix64 seed (default 0)");
  command->add_option("--format", config.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  command->add_option("--output", config.output, "Write output to PATH");
  command->add_flag("--renormalize", config.renormalize,
                    "Accept |sum(p) - 1| <= 1e-6 and rescale");
}

void report_error(std::ostream& err, std::string_view name,
                  const std::string& message) {
  err << canonical_dump({{"error", std::string(name)}, {"message", message}})
      << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Dependent categorical sequences: sampling, distribution and "
               "verification"};
  app.name("dcrv");
  app.require_subcommand(1);
  CommandOptions options;

  auto* sample = app.add_subcommand("sample", "Generate sequences");
  add_common(sample, options.config, true);
  sample->add_option("--count", options.count, "Number of sequences");

  auto* pmf_cmd = app.add_subcommand("pmf", "Probability of a count vector");
  add_common(pmf_cmd, options.config, true);
  pmf_cmd->add_option("--counts", options.counts, "Comma-separated counts");
  pmf_cmd->add_flag("--table", options.table, "Emit the full table");

  auto* moments_cmd = app.add_subcommand("moments", "Mean and covariance");
  add_common(moments_cmd, options.config, true);
  moments_cmd->add_flag("--printed-formulas", options.printed_formulas,
                        "Use the published covariance forms");

  auto* verify = app.add_subcommand("verify", "Check closed forms by enumeration");
  add_common(verify, options.config, false);
  verify->add_option("--max-n", options.max_n, "Largest length to enumerate");

  auto* gof = app.add_subcommand("gof", "Chi-square test of sampled counts");
  add_common(gof, options.config, true);
  gof->add_option("--samples", options.samples, "Number of sequences");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what());
    return kInvalidInput;
  }

  int exit_code = kSuccess;
  std::string text;
  try {
    if (sample->parsed()) {
      text = cmd_sample(options);
    } else if (pmf_cmd->parsed()) {
      text = cmd_pmf(options);
    } else if (moments_cmd->parsed()) {
      text = cmd_moments(options);
    } else if (verify->parsed()) {
      bool passed = false;
      text = cmd_verify(options, passed);
      if (!passed) exit_code = kVerificationFailed;
    } else if (gof->parsed()) {
      text = cmd_gof(options);
    }
  } catch (const Error& e) {
    report_error(err, e.name(), e.message());
    return is_resource_cap(e.code()) ? kResourceCap : kInvalidInput;
  }

  if (options.config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(options.config.output, std::ios::binary);
    file << text;
    if (!file) {
      report_error(err, "OutputError",
                   "cannot write " + options.config.output);
      return kInvalidInput;
    }
  }
  return exit_code;
}

}  // namespace dcrv::cli
