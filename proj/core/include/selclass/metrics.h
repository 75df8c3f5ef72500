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

#ifndef SELCLASS_METRICS_H_
#define SELCLASS_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace selclass {

// Selective-classification metrics over (confidence, 0/1 loss) pairs.
//
// Samples are accepted in the canonical rank order: confidence descending,
// ties broken by original index ascending. AURC, SAC and the RC curve are
// defined on that order, so under heavy ties they depend on sample order;
// AUROC instead gives tied pairs half credit.

struct RCPoint {
  double coverage = 0.0;
  double risk = 0.0;
  friend bool operator==(const RCPoint&, const RCPoint&) = default;
};

// One point per accepted-prefix size k = 1..N: (k / N, mean loss of prefix).
struct RCCurve {
  std::vector<RCPoint> points;
  friend bool operator==(const RCCurve&, const RCCurve&) = default;
};

std::vector<std::size_t> RankOrder(std::span<const double> confidences);

RCCurve ComputeRCCurve(std::span<const double> confidences,
                       std::span<const std::uint8_t> losses);

// Mean of the N prefix risks.
double Aurc(std::span<const double> confidences,
            std::span<const std::uint8_t> losses);

// AURC of the ordering that accepts every correct sample first.
double OracleAurc(std::span<const std::uint8_t> losses);

double ExcessAurc(std::span<const double> confidences,
                  std::span<const std::uint8_t> losses);

// (AURC - oracle) / (risk - oracle): 0 for the oracle, ~1 for a random
// ordering. Throws UndefinedMetricError when there are no errors or no
// correct predictions.
double Naurc(std::span<const double> confidences,
             std::span<const std::uint8_t> losses);

// NAURC from a precomputed AURC.
double NormalizeAurc(double aurc, std::span<const std::uint8_t> losses);

// Probability that a correct prediction outranks an incorrect one, ties
// counting one half. Throws UndefinedMetricError unless both kinds exist.
double Auroc(std::span<const double> confidences,
             std::span<const std::uint8_t> losses);

// Largest coverage k / N whose prefix accuracy reaches target_accuracy, or 0
// if no prefix does.
double SelectiveAccuracyCoverage(std::span<const double> confidences,
                                 std::span<const std::uint8_t> losses,
                                 double target_accuracy);

// Mean over models of max-thresholded gains naurc_msp - naurc_method: a gain
// counts only if it exceeds epsilon.
double AveragePositiveGain(std::span<const double> naurc_msp,
                           std::span<const double> naurc_method,
                           double epsilon);

// Number of distinct confidence values shared by two or more samples.
std::size_t CountTieGroups(std::span<const double> confidences);

struct MetricReport {
  std::size_t samples = 0;
  std::size_t errors = 0;
  double accuracy = 0.0;
  double risk = 0.0;
  double aurc = 0.0;
  double oracle_aurc = 0.0;
  double e_aurc = 0.0;
  // Absent when undefined (no errors, or no correct predictions).
  std::optional<double> naurc;
  std::optional<double> auroc;
  // (target accuracy, coverage), in the order requested.
  std::vector<std::pair<double, double>> sac;
  std::size_t tie_groups = 0;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

MetricReport Evaluate(std::span<const double> confidences,
                      std::span<const std::uint8_t> losses,
                      std::span<const double> sac_targets = {});

}  // namespace selclass

#endif  // SELCLASS_METRICS_H_
