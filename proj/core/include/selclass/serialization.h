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

#ifndef SELCLASS_SERIALIZATION_H_
#define SELCLASS_SERIALIZATION_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selclass/benchmark_runner.h"
#include "selclass/estimators.h"
#include "selclass/metrics.h"
#include "selclass/tuning.h"

namespace selclass {

// Artifacts are JSON documents tagged with a format name and version. Reals
// are written with 17 significant digits, so loading restores them exactly;
// undefined metrics are written as the string "undefined". Loaders throw
// ParseError on malformed input or a version mismatch.

inline constexpr int kArtifactVersion = 1;

// Shortest-safe text for a finite double: 17 significant digits, always
// with a decimal point or exponent.
std::string FormatReal(double value);

// Spec file: a tuned method plus its tuning record.
std::string SerializeSpecFile(const TuneResult& result);
TuneResult ParseSpecFile(std::string_view text);

std::string SerializeMethod(const MethodSpec& method);
MethodSpec ParseMethod(std::string_view text);

std::string SerializeMetricReport(const MetricReport& report);
MetricReport ParseMetricReport(std::string_view text);

std::string SerializeRCCurve(const RCCurve& curve);
RCCurve ParseRCCurve(std::string_view text);

// "coverage risk" per line.
std::string FormatRCCurveText(const RCCurve& curve);
RCCurve ParseRCCurveText(std::string_view text);

// Output of `evaluate`: metrics, and the tuning record when a spec was used.
struct EvaluationReport {
  std::optional<TuneResult> tune;
  MetricReport metrics;

  friend bool operator==(const EvaluationReport&,
                         const EvaluationReport&) = default;
};
std::string SerializeEvaluationReport(const EvaluationReport& report);
EvaluationReport ParseEvaluationReport(std::string_view text);

// Every key is optional; missing keys keep RunConfig::Default() values.
// Grids are lists of values or {"min", "max", "step"} ranges.
std::string SerializeRunConfig(const RunConfig& config);
RunConfig ParseRunConfig(std::string_view text);

std::string SerializeBenchmarkReport(const BenchmarkReport& report);
BenchmarkReport ParseBenchmarkReport(std::string_view text);

struct SweepReport {
  std::string method;  // MethodSelection::Name()
  std::vector<SweepPoint> points;

  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};
// "size mean std naurc_1 .. naurc_R" per line after a "# method" comment.
std::string FormatSweepTable(const SweepReport& report);
SweepReport ParseSweepTable(std::string_view text);

}  // namespace selclass

#endif  // SELCLASS_SERIALIZATION_H_
