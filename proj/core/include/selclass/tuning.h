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

#ifndef SELCLASS_TUNING_H_
#define SELCLASS_TUNING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "selclass/classifier.h"
#include "selclass/estimators.h"

namespace selclass {

enum class Objective { kNll, kAurc };

std::string_view ObjectiveName(Objective objective);
std::optional<Objective> ParseObjective(std::string_view name);

// Evenly spaced values lo, lo + step, ..., hi.
std::vector<double> StepGrid(double lo, double hi, double step);

// Search spaces for every tunable method. Every grid must be non-empty and
// strictly increasing; temperatures must be positive.
struct GridSpec {
  std::vector<double> temperatures;  // also the tau grid of p-norm
  std::vector<int> p_values;
  std::vector<double> ets_weights;  // w1 and w2
  std::vector<double> bk_weights;   // a and b
  std::vector<double> hts_b;
  std::vector<double> hts_w;

  // 0.01..3.00 temperatures, p in 0..10, and the step-0.01 ETS/BK/HTS ranges.
  static GridSpec Default();
  void Validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct TuneOptions {
  // Worker threads for candidate evaluation; <= 0 uses every hardware thread.
  // The result does not depend on this.
  int jobs = 0;
};

struct TuneDiagnostics {
  std::size_t candidates_evaluated = 0;
  // The optimum sits on the boundary of a searched grid.
  bool edge_hit = false;
  // Rows whose p-norm is zero; they are scored without normalization.
  std::size_t degenerate_rows = 0;
  // HTS rows whose temperature was clamped at the optimum.
  std::size_t clamped_rows = 0;

  friend bool operator==(const TuneDiagnostics&,
                         const TuneDiagnostics&) = default;
};

struct TuneResult {
  MethodSpec method = EstimatorSpec::Make(BaseEstimator::kMsp);
  Objective objective = Objective::kAurc;
  // Objective at the tuned optimum, before any fallback.
  double objective_value = 0.0;
  // Tuning-set AURC of `method` and of plain MSP.
  double tuning_aurc = 0.0;
  double msp_tuning_aurc = 0.0;
  bool fallback_applied = false;
  TuneDiagnostics diagnostics;

  friend bool operator==(const TuneResult&, const TuneResult&) = default;
};

// -(1/N) sum_i log softmax(z_i / T)[y_i], natural log.
double NegativeLogLikelihood(const LogitMatrix& logits,
                             std::span<const int> labels, double temperature);

// Grid search over T for a softmax-based base. Ties go to the T closest to
// 1, then the smaller T. NLL ignores the base.
TuneResult TuneTemperature(BaseEstimator base, const LogitMatrix& logits,
                           std::span<const int> labels,
                           std::span<const double> temperatures,
                           Objective objective,
                           const TuneOptions& options = {});

// Same search for several bases at once; the softmax is computed once per
// candidate and shared.
std::vector<TuneResult> TuneTemperatureBatch(
    std::span<const BaseEstimator> bases, const LogitMatrix& logits,
    std::span<const int> labels, std::span<const double> temperatures,
    Objective objective, const TuneOptions& options = {});

// p-norm search by AURC: the best tau per p (tie rule as for T), then the
// best p (ties to the smaller p). tau is not searched for MaxLogit and
// LogitsMargin.
TuneResult TunePNorm(BaseEstimator base, const LogitMatrix& logits,
                     std::span<const int> labels, std::span<const int> p_values,
                     std::span<const double> taus,
                     const TuneOptions& options = {});

std::vector<TuneResult> TunePNormBatch(std::span<const BaseEstimator> bases,
                                       const LogitMatrix& logits,
                                       std::span<const int> labels,
                                       std::span<const int> p_values,
                                       std::span<const double> taus,
                                       const TuneOptions& options = {});

enum class TunableKind { kEts, kBk, kHts };

std::string_view TunableKindName(TunableKind kind);
std::optional<TunableKind> ParseTunableKind(std::string_view name);

// Exhaustive AURC search over the kind's two-parameter grid; ties go to the
// lexicographically smallest parameter pair. ETS first fits its temperature
// by NLL over grid.temperatures.
TuneResult TuneTunable(TunableKind kind, const LogitMatrix& logits,
                       std::span<const int> labels, const GridSpec& grid,
                       const TuneOptions& options = {});

// Replaces the tuned method by plain MSP unless it beats MSP's tuning-set
// AURC by more than epsilon.
TuneResult ApplyFallback(TuneResult result, double epsilon);

enum class TransformKind { kRaw, kTemperature, kPNorm };

// What to tune: a base estimator with a transform, or a two-parameter
// tunable estimator. Written as "msp/raw", "msp/ts-nll", "msp/ts-aurc",
// "max-logit/pnorm", "ets", "bk", "hts".
struct MethodSelection {
  std::variant<BaseEstimator, TunableKind> estimator = BaseEstimator::kMsp;
  TransformKind transform = TransformKind::kRaw;
  // Only meaningful for temperature scaling.
  Objective objective = Objective::kAurc;

  std::string Name() const;
  // Throws ParameterError for unknown names and for temperature scaling on
  // MaxLogit/LogitsMargin.
  static MethodSelection Parse(std::string_view name);

  friend bool operator==(const MethodSelection&,
                         const MethodSelection&) = default;
};

TuneResult Tune(const MethodSelection& selection, const LogitMatrix& logits,
                std::span<const int> labels, const GridSpec& grid,
                const TuneOptions& options = {});

struct SweepPoint {
  std::size_t size = 0;
  std::vector<double> naurc;  // one per repetition
  double mean = 0.0;
  double std = 0.0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepOptions {
  std::vector<std::size_t> sizes;
  std::size_t repetitions = 1;
  std::uint64_t seed = 0;
  // Apply the MSP fallback after each tune.
  std::optional<double> fallback_epsilon;
  TuneOptions tune;
};

// For each size, tunes on `repetitions` subsamples (without replacement) of
// the tuning set and reports test NAURC. The test set stays fixed.
std::vector<SweepPoint> DataEfficiencySweep(const MethodSelection& selection,
                                            const LogitMatrix& tuning_logits,
                                            std::span<const int> tuning_labels,
                                            const LogitMatrix& test_logits,
                                            std::span<const int> test_labels,
                                            const GridSpec& grid,
                                            const SweepOptions& options);

// Sample mean and standard deviation (n - 1 denominator; 0 for one value).
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;

  friend bool operator==(const MeanStd&, const MeanStd&) = default;
};
MeanStd ComputeMeanStd(std::span<const double> values);

}  // namespace selclass

#endif  // SELCLASS_TUNING_H_
