// Copyright 2026 The selclass Authors
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

// selclass: tune, evaluate and benchmark confidence estimators for selective
// classification from stored logits.
//
// Exit codes: 0 success, 2 parse or parameter error, 3 undefined metric.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "selclass/benchmark_runner.h"
#include "selclass/classifier.h"
#include "selclass/dataset_io.h"
#include "selclass/errors.h"
#include "selclass/estimators.h"
#include "selclass/histogram.h"
#include "selclass/metrics.h"
#include "selclass/serialization.h"
#include "selclass/split.h"
#include "selclass/synthetic.h"
#include "selclass/tuning.h"

namespace {

using namespace selclass;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitUndefined = 3;

const std::vector<std::string> kMethodNames = {
    "msp",         "softmax-margin", "max-logit", "logits-margin",
    "neg-entropy", "neg-gini",       "ets",       "bk",
    "hts"};

// Combines --method/--transform/--objective. A method already written as
// "base/transform" is taken as is.
MethodSelection BuildSelection(const std::string& method,
                               const std::string& transform,
                               const std::string& objective) {
  if (method.find('/') != std::string::npos) {
    return MethodSelection::Parse(method);
  }
  if (ParseTunableKind(method)) {
    if (transform != "raw") {
      throw ParameterError("--transform does not apply to " + method);
    }
    return MethodSelection::Parse(method);
  }
  if (transform == "ts")
    return MethodSelection::Parse(method + "/ts-" + objective);
  return MethodSelection::Parse(method + "/" + transform);
}

GridSpec LoadGrids(const std::string& config_path) {
  if (config_path.empty()) return GridSpec::Default();
  return ParseRunConfig(ReadFile(config_path)).grids;
}

// Rows used for tuning/evaluation: the whole file, or one side of split 0.
struct Subset {
  LogitMatrix logits;
  Labels labels;
};

Subset SelectSubset(const Dataset& data, std::optional<std::size_t> tuning_size,
                    std::uint64_t seed, bool tuning_side) {
  if (!tuning_size) return {data.logits, data.labels};
  const auto split =
      MakeSplit(data.logits.rows(), SplitSpec{*tuning_size, seed, 1}, 0);
  const auto& idx = tuning_side ? split.tuning : split.test;
  return {data.logits.SelectRows(idx), SelectLabels(data.labels, idx)};
}

MethodSpec LoadMethod(const std::string& spec_path,
                      std::optional<TuneResult>* tune) {
  if (spec_path.empty()) return EstimatorSpec::Make(BaseEstimator::kMsp);
  *tune = ParseSpecFile(ReadFile(spec_path));
  return (*tune)->method;
}

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string FmtOptional(const std::optional<double>& v) {
  return v ? Fmt(*v) : "undefined";
}

struct TuneArgs {
  std::string data, method, transform = "raw", objective = "aurc", out, config;
  std::optional<std::size_t> tuning_size;
  std::uint64_t seed = 0;
  double fallback_epsilon = 0.0;
  bool no_fallback = false;
  int jobs = 0;
};

int RunTune(const TuneArgs& a) {
  const auto selection = BuildSelection(a.method, a.transform, a.objective);
  const auto grids = LoadGrids(a.config);
  const auto data = LoadDataset(a.data);
  const auto subset = SelectSubset(data, a.tuning_size, a.seed, true);
  auto result =
      Tune(selection, subset.logits, subset.labels, grids, TuneOptions{a.jobs});
  if (!a.no_fallback)
    result = ApplyFallback(std::move(result), a.fallback_epsilon);
  WriteFile(a.out, SerializeSpecFile(result));
  std::cout << selection.Name() << " -> " << Describe(result.method)
            << (result.fallback_applied ? " (fallback)" : "") << "\n"
            << "tuning AURC " << Fmt(result.tuning_aurc) << " (MSP "
            << Fmt(result.msp_tuning_aurc) << "), "
            << result.diagnostics.candidates_evaluated << " candidates"
            << (result.diagnostics.edge_hit ? ", optimum on grid edge" : "")
            << "\n";
  if (result.diagnostics.degenerate_rows > 0) {
    std::cerr << "warning: " << result.diagnostics.degenerate_rows
              << " all-zero logit rows left unnormalized\n";
  }
  return kExitOk;
}

struct EvaluateArgs {
  std::string data, spec, out, histogram;
  std::vector<double> sac = {0.98};
  std::size_t bins = 20;
  std::optional<std::size_t> tuning_size;
  std::uint64_t seed = 0;
};

int RunEvaluate(const EvaluateArgs& a) {
  EvaluationReport report;
  const auto method = LoadMethod(a.spec, &report.tune);
  const auto data = LoadDataset(a.data);
  const auto subset = SelectSubset(data, a.tuning_size, a.seed, false);
  ScoringDiagnostics scoring;
  const auto conf = ApplyMethod(method, subset.logits, &scoring);
  report.metrics =
      Evaluate(conf, ClassifierLosses(subset.logits, subset.labels), a.sac);
  if (!a.out.empty()) WriteFile(a.out, SerializeEvaluationReport(report));
  if (!a.histogram.empty()) {
    WriteFile(a.histogram, FormatHistogram(ConfidenceHistogram(conf, a.bins)));
  }
  const auto& m = report.metrics;
  std::cout << Describe(method) << " on " << m.samples << " samples\n"
            << "accuracy " << Fmt(m.accuracy) << "  AURC " << Fmt(m.aurc)
            << "  E-AURC " << Fmt(m.e_aurc) << "  NAURC "
            << FmtOptional(m.naurc) << "  AUROC " << FmtOptional(m.auroc)
            << "\n";
  for (const auto& [target, coverage] : m.sac) {
    std::cout << "SAC@" << Fmt(target) << " " << Fmt(coverage) << "\n";
  }
  if (scoring.clamped_rows > 0) {
    std::cerr << "warning: HTS temperature clamped on " << scoring.clamped_rows
              << " rows\n";
  }
  return kExitOk;
}

struct BenchmarkArgs {
  std::string config, out, table;
  std::vector<std::string> data;
  int jobs = 0;
};

int RunBenchmarkCommand(const BenchmarkArgs& a) {
  const RunConfig config = a.config.empty()
                               ? RunConfig::Default()
                               : ParseRunConfig(ReadFile(a.config));
  std::vector<NamedDataset> datasets;
  for (const auto& path : a.data) {
    datasets.push_back({path, LoadDataset(path)});
  }
  const auto report = RunBenchmark(config, datasets, a.jobs);
  WriteFile(a.out, SerializeBenchmarkReport(report));
  const std::string table = FormatBenchmarkTable(report);
  if (!a.table.empty()) WriteFile(a.table, table);
  std::cout << table;
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  return kExitOk;
}

struct RCCurveArgs {
  std::string data, spec, out, format = "text";
};

int RunRCCurve(const RCCurveArgs& a) {
  std::optional<TuneResult> tune;
  const auto method = LoadMethod(a.spec, &tune);
  const auto data = LoadDataset(a.data);
  const auto curve = ComputeRCCurve(ApplyMethod(method, data.logits),
                                    ClassifierLosses(data.logits, data.labels));
  WriteFile(a.out, a.format == "json" ? SerializeRCCurve(curve)
                                      : FormatRCCurveText(curve));
  return kExitOk;
}

struct SynthArgs {
  SyntheticModelSpec spec;
  std::string mode = "none", out, format;
};

int RunSynth(SynthArgs a) {
  a.spec.mode = *ParseDistortionMode(a.mode);
  const auto data = GenerateSynthetic(a.spec);
  DatasetFormat format = DatasetFormat::kCsv;
  if (a.format == "binary") {
    format = DatasetFormat::kRawBinary;
  } else if (a.format.empty()) {
    format = FormatFromExtension(a.out).value_or(DatasetFormat::kCsv);
  }
  SaveDataset(a.out, data.logits, data.labels, format);
  std::cout << "wrote " << a.spec.n << " x " << a.spec.c << " logits, accuracy "
            << Fmt(Accuracy(ClassifierLosses(data.logits, data.labels)))
            << "\n";
  return kExitOk;
}

struct SweepArgs {
  std::string data, method, transform = "raw", objective = "aurc", out, config;
  std::vector<std::size_t> sizes = {100, 250, 500, 1000};
  std::size_t reps = 10;
  std::size_t tuning_size = 5000;
  std::uint64_t seed = 0;
  std::optional<double> fallback_epsilon;
  int jobs = 0;
};

int RunSweep(const SweepArgs& a) {
  const auto selection = BuildSelection(a.method, a.transform, a.objective);
  const auto grids = LoadGrids(a.config);
  const auto data = LoadDataset(a.data);
  const auto tuning = SelectSubset(data, a.tuning_size, a.seed, true);
  const auto test = SelectSubset(data, a.tuning_size, a.seed, false);
  SweepOptions options;
  options.sizes = a.sizes;
  options.repetitions = a.reps;
  options.seed = a.seed;
  options.fallback_epsilon = a.fallback_epsilon;
  options.tune.jobs = a.jobs;
  SweepReport report;
  report.method = selection.Name();
  report.points = DataEfficiencySweep(selection, tuning.logits, tuning.labels,
                                      test.logits, test.labels, grids, options);
  const std::string table = FormatSweepTable(report);
  WriteFile(a.out, table);
  std::cout << table;
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Post-hoc confidence estimators for selective classification"};
  app.require_subcommand(1);

  TuneArgs tune;
  auto* tune_cmd =
      app.add_subcommand("tune", "Tune a method and write a spec file");
  tune_cmd->add_option("--data", tune.data, "Logits file (CSV or RawBinary)")
      ->required();
  tune_cmd->add_option("--method", tune.method, "Estimator")
      ->required()
      ->check(CLI::IsMember(kMethodNames));
  tune_cmd->add_option("--transform", tune.transform)
      ->check(CLI::IsMember({"raw", "ts", "pnorm"}));
  tune_cmd->add_option("--objective", tune.objective, "Objective for ts")
      ->check(CLI::IsMember({"nll", "aurc"}));
  tune_cmd->add_option("--tuning-size", tune.tuning_size,
                       "Tune on a random subset of this size (split 0)");
  tune_cmd->add_option("--seed", tune.seed);
  tune_cmd->add_option("--config", tune.config,
                       "Run config supplying the grids");
  tune_cmd->add_option("--fallback-epsilon", tune.fallback_epsilon)
      ->check(CLI::NonNegativeNumber);
  tune_cmd->add_flag("--no-fallback", tune.no_fallback,
                     "Keep the tuned method");
  tune_cmd->add_option("--jobs", tune.jobs);
  tune_cmd->add_option("--out", tune.out, "Spec file")->required();

  EvaluateArgs evaluate;
  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "Evaluate a spec (default MSP) on a dataset");
  evaluate_cmd->add_option("--data", evaluate.data)->required();
  evaluate_cmd->add_option("--spec", evaluate.spec);
  evaluate_cmd->add_option("--sac", evaluate.sac, "Target accuracies")
      ->delimiter(',');
  evaluate_cmd->add_option("--out", evaluate.out, "Report file");
  evaluate_cmd->add_option("--histogram", evaluate.histogram,
                           "Write a confidence histogram table");
  evaluate_cmd->add_option("--bins", evaluate.bins)->check(CLI::PositiveNumber);
  evaluate_cmd->add_option("--tuning-size", evaluate.tuning_size,
                           "Evaluate on the test side of split 0");
  evaluate_cmd->add_option("--seed", evaluate.seed);

  BenchmarkArgs bench;
  auto* bench_cmd = app.add_subcommand(
      "benchmark", "Tune and evaluate methods over splits and models");
  bench_cmd->add_option("--config", bench.config, "Run config (JSON)");
  bench_cmd->add_option("--data", bench.data, "One file per model")->required();
  bench_cmd->add_option("--out", bench.out, "Report file (JSON)")->required();
  bench_cmd->add_option("--table", bench.table,
                        "Also write the text table here");
  bench_cmd->add_option("--jobs", bench.jobs);

  RCCurveArgs rc;
  auto* rc_cmd =
      app.add_subcommand("rc-curve", "Export the risk-coverage curve");
  rc_cmd->add_option("--data", rc.data)->required();
  rc_cmd->add_option("--spec", rc.spec);
  rc_cmd->add_option("--format", rc.format)
      ->check(CLI::IsMember({"text", "json"}));
  rc_cmd->add_option("--out", rc.out)->required();

  SynthArgs synth;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic logits file");
  synth_cmd->add_option("--n", synth.spec.n)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--c", synth.spec.c)->check(CLI::Range(2, 1 << 20));
  synth_cmd->add_option("--mode", synth.mode)
      ->check(CLI::IsMember({"none", "norm-inflation", "underconfidence"}));
  synth_cmd->add_option("--accuracy", synth.spec.base_accuracy);
  synth_cmd->add_option("--norm-mean", synth.spec.norm_log_mean);
  synth_cmd->add_option("--norm-sigma", synth.spec.norm_log_sigma);
  synth_cmd->add_option("--factor", synth.spec.underconfidence_factor);
  synth_cmd->add_option("--seed", synth.spec.seed);
  synth_cmd->add_option("--format", synth.format)
      ->check(CLI::IsMember({"csv", "binary"}));
  synth_cmd->add_option("--out", synth.out)->required();

  SweepArgs sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Test NAURC against tuning-set size");
  sweep_cmd->add_option("--data", sweep.data)->required();
  sweep_cmd
      ->add_option("--method", sweep.method,
                   "Estimator, or base/transform such as max-logit/pnorm")
      ->required();
  sweep_cmd->add_option("--transform", sweep.transform)
      ->check(CLI::IsMember({"raw", "ts", "pnorm"}));
  sweep_cmd->add_option("--objective", sweep.objective)
      ->check(CLI::IsMember({"nll", "aurc"}));
  sweep_cmd->add_option("--sizes", sweep.sizes)->delimiter(',');
  sweep_cmd->add_option("--reps", sweep.reps)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--tuning-size", sweep.tuning_size,
                        "Size of the tuning side of split 0");
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--fallback-epsilon", sweep.fallback_epsilon,
                        "Apply the MSP fallback after each tune");
  sweep_cmd->add_option("--config", sweep.config,
                        "Run config supplying the grids");
  sweep_cmd->add_option("--jobs", sweep.jobs);
  sweep_cmd->add_option("--out", sweep.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*tune_cmd) return RunTune(tune);
    if (*evaluate_cmd) return RunEvaluate(evaluate);
    if (*bench_cmd) return RunBenchmarkCommand(bench);
    if (*rc_cmd) return RunRCCurve(rc);
    if (*synth_cmd) return RunSynth(synth);
    if (*sweep_cmd) return RunSweep(sweep);
  } catch (const UndefinedMetricError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUndefined;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const DegenerateInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) { return Main(argc, argv); }
