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

#ifndef SELCLASS_BENCHMARK_RUNNER_H_
#define SELCLASS_BENCHMARK_RUNNER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "selclass/dataset_io.h"
#include "selclass/estimators.h"
#include "selclass/metrics.h"
#include "selclass/split.h"
#include "selclass/tuning.h"

namespace selclass {

struct RunConfig {
  std::vector<MethodSelection> methods;
  GridSpec grids = GridSpec::Default();
  // APG gain threshold, on the NAURC scale.
  double epsilon = 0.01;
  // MSP fallback threshold, on the raw AURC scale.
  double fallback_epsilon = 0.0;
  SplitSpec split;
  std::vector<double> sac_targets = {0.95, 0.98};

  // Every base with raw, TS-NLL, TS-AURC (softmax bases only) and p-norm;
  // 10 splits of 5000 tuning samples; epsilon 0.01.
  static RunConfig Default();
  void Validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Outcome of one (model, method, split): tuned on the tuning split, after
// fallback, evaluated on the test split.
struct SplitOutcome {
  MethodSpec method = EstimatorSpec::Make(BaseEstimator::kMsp);
  bool fallback_applied = false;
  double tuning_aurc = 0.0;
  MetricReport test;

  friend bool operator==(const SplitOutcome&, const SplitOutcome&) = default;
};

struct MethodOutcome {
  std::string method;  // MethodSelection::Name()
  std::vector<SplitOutcome> splits;
  // Over splits; absent if NAURC is undefined on any split.
  std::optional<MeanStd> naurc;

  friend bool operator==(const MethodOutcome&, const MethodOutcome&) = default;
};

struct ModelOutcome {
  std::string name;
  std::size_t samples = 0;
  std::vector<MethodOutcome> methods;

  friend bool operator==(const ModelOutcome&, const ModelOutcome&) = default;
};

// APG of one method against MSP: computed per split over the models, then
// summarized over splits.
struct ApgOutcome {
  std::string method;
  std::vector<double> per_split;
  std::optional<MeanStd> summary;

  friend bool operator==(const ApgOutcome&, const ApgOutcome&) = default;
};

struct BenchmarkReport {
  RunConfig config;
  std::vector<ModelOutcome> models;
  std::vector<ApgOutcome> apg;
  std::vector<std::string> warnings;

  friend bool operator==(const BenchmarkReport&,
                         const BenchmarkReport&) = default;
};

struct NamedDataset {
  std::string name;
  Dataset data;
};

inline constexpr const char* kMspRawName = "msp/raw";

// Models whose MSP or method NAURC is undefined on a split are left out of
// that split's APG, with a warning.
std::vector<ApgOutcome> AggregateApg(const std::vector<ModelOutcome>& models,
                                     const std::vector<std::string>& methods,
                                     double epsilon,
                                     std::vector<std::string>* warnings);

// Tunes and evaluates every method on every split of every dataset. MSP/raw
// is always included. Results do not depend on `jobs`. Failures name the
// dataset.
BenchmarkReport RunBenchmark(const RunConfig& config,
                             const std::vector<NamedDataset>& datasets,
                             int jobs = 0);

// Table of APG (mean +- std over splits): bases x {raw, ts-nll, ts-aurc,
// pnorm}, then the tunable estimators, then per-model NAURC with the tuned
// hyperparameters or "F" for the MSP fallback.
std::string FormatBenchmarkTable(const BenchmarkReport& report);

}  // namespace selclass

#endif  // SELCLASS_BENCHMARK_RUNNER_H_
