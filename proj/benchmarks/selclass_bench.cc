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

#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>
#include <vector>

#include "internal/fast_exp.h"
#include "selclass/classifier.h"
#include "selclass/estimators.h"
#include "selclass/metrics.h"
#include "selclass/tuning.h"

namespace selclass {
namespace {

LogitMatrix MakeLogits(std::size_t rows, std::size_t cols, double scale) {
  std::mt19937_64 rng(rows * 31 + cols);
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> values(rows * cols);
  for (double& v : values) v = dist(rng);
  return LogitMatrix(rows, cols, std::move(values));
}

std::vector<int> MakeLabels(std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(rows + 5);
  std::uniform_int_distribution<int> dist(0, static_cast<int>(cols) - 1);
  std::vector<int> labels(rows);
  for (int& y : labels) y = dist(rng);
  return labels;
}

void BM_ExpNonPositive(benchmark::State& state) {
  std::vector<double> x(4096);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-30.0, 0.0);
  for (double& v : x) v = dist(rng);
  for (auto _ : state) {
    double sum = 0.0;
    for (const double v : x) sum += internal::ExpNonPositive(v);
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}
BENCHMARK(BM_ExpNonPositive);

void BM_ApplyEstimator(benchmark::State& state) {
  const auto base = static_cast<BaseEstimator>(state.range(0));
  const auto logits = MakeLogits(2000, 1000, 2.0);
  const auto spec = EstimatorSpec::Make(base, PNormTransform{2, 0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ApplyEstimator(spec, logits));
  }
  state.SetLabel(std::string(BaseEstimatorName(base)));
  state.SetItemsProcessed(state.iterations() * logits.rows() * logits.cols());
}
BENCHMARK(BM_ApplyEstimator)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_Aurc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto logits = MakeLogits(n, 10, 2.0);
  const auto losses = ClassifierLosses(logits, MakeLabels(n, 10));
  const auto confidences =
      ApplyEstimator(EstimatorSpec::Make(BaseEstimator::kMsp), logits);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Aurc(confidences, losses));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Aurc)->Range(1 << 10, 1 << 17);

void BM_TuneTemperature(benchmark::State& state) {
  const auto logits = MakeLogits(2000, 100, 2.0);
  const auto labels = MakeLabels(2000, 100);
  const auto grid = GridSpec::Default();
  const auto objective = static_cast<Objective>(state.range(0));
  const BaseEstimator bases[] = {BaseEstimator::kMsp};
  TuneOptions options;
  options.jobs = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(TuneTemperatureBatch(
        bases, logits, labels, grid.temperatures, objective, options));
  }
}
BENCHMARK(BM_TuneTemperature)
    ->Arg(static_cast<int>(Objective::kNll))
    ->Arg(static_cast<int>(Objective::kAurc))
    ->Unit(benchmark::kMillisecond);

void BM_TunePNorm(benchmark::State& state) {
  const auto logits = MakeLogits(2000, 100, 2.0);
  const auto labels = MakeLabels(2000, 100);
  const auto grid = GridSpec::Default();
  const BaseEstimator bases[] = {BaseEstimator::kMsp, BaseEstimator::kMaxLogit};
  TuneOptions options;
  options.jobs = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(TunePNormBatch(
        bases, logits, labels, grid.p_values, grid.temperatures, options));
  }
}
BENCHMARK(BM_TunePNorm)->Unit(benchmark::kMillisecond);

void BM_TuneTunable(benchmark::State& state) {
  const auto kind = static_cast<TunableKind>(state.range(0));
  const auto logits = MakeLogits(500, 10, 2.0);
  const auto labels = MakeLabels(500, 10);
  const auto grid = GridSpec::Default();
  TuneOptions options;
  options.jobs = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(TuneTunable(kind, logits, labels, grid, options));
  }
  state.SetLabel(std::string(TunableKindName(kind)));
}
BENCHMARK(BM_TuneTunable)
    ->Arg(static_cast<int>(TunableKind::kEts))
    ->Arg(static_cast<int>(TunableKind::kBk))
    ->Arg(static_cast<int>(TunableKind::kHts))
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace selclass

BENCHMARK_MAIN();
