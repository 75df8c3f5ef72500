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

#ifndef SELCLASS_ESTIMATORS_H_
#define SELCLASS_ESTIMATORS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "selclass/classifier.h"

namespace selclass {

// Parameter-free confidence scores computed from one logit row.
enum class BaseEstimator {
  kMsp,
  kSoftmaxMargin,
  kMaxLogit,
  kLogitsMargin,
  kNegativeEntropy,
  kNegativeGini,
};

inline constexpr std::array<BaseEstimator, 6> kAllBaseEstimators = {
    BaseEstimator::kMsp,
    BaseEstimator::kSoftmaxMargin,
    BaseEstimator::kMaxLogit,
    BaseEstimator::kLogitsMargin,
    BaseEstimator::kNegativeEntropy,
    BaseEstimator::kNegativeGini,
};

// CLI-style names: "msp", "softmax-margin", "max-logit", "logits-margin",
// "neg-entropy", "neg-gini".
std::string_view BaseEstimatorName(BaseEstimator base);
std::optional<BaseEstimator> ParseBaseEstimator(std::string_view name);

// MaxLogit and LogitsMargin read the logits directly; the others go through
// the softmax and are the only ones temperature scaling can affect.
bool IsSoftmaxBased(BaseEstimator base);

struct RawTransform {
  friend bool operator==(const RawTransform&, const RawTransform&) = default;
};

struct TemperatureTransform {
  double temperature = 1.0;
  friend bool operator==(const TemperatureTransform&,
                         const TemperatureTransform&) = default;
};

// z / (tau * ||z||_p). p = 0 means the count of nonzero entries.
struct PNormTransform {
  int p = 2;
  double tau = 1.0;
  friend bool operator==(const PNormTransform&,
                         const PNormTransform&) = default;
};

using Transform =
    std::variant<RawTransform, TemperatureTransform, PNormTransform>;

// A base score applied after a logit transformation.
class EstimatorSpec {
 public:
  // Throws ParameterError for invalid hyperparameters and for temperature
  // scaling on MaxLogit/LogitsMargin (it cannot change their ranking). For
  // those two bases a p-norm tau is forced to 1.
  static EstimatorSpec Make(BaseEstimator base, Transform transform = {});

  // (MSP, Raw) marked as the result of a fallback.
  static EstimatorSpec MspFallback();

  BaseEstimator base() const { return base_; }
  const Transform& transform() const { return transform_; }
  bool fallback_applied() const { return fallback_applied_; }

  friend bool operator==(const EstimatorSpec&, const EstimatorSpec&) = default;

 private:
  EstimatorSpec(BaseEstimator base, Transform transform, bool fallback)
      : base_(base),
        transform_(std::move(transform)),
        fallback_applied_(fallback) {}

  BaseEstimator base_;
  Transform transform_;
  bool fallback_applied_;
};

// Tunable estimators that do not factor into base score + transform.

// w1 * MSP(z / T) + w2 * MSP(z); T comes from a prior TS-NLL fit.
struct EtsParams {
  double w1 = 0.0;
  double w2 = 1.0;
  double temperature = 1.0;
  friend bool operator==(const EtsParams&, const EtsParams&) = default;
};

// a * MSP(z) + b * (1 - runner-up softmax probability).
struct BkParams {
  double a = 1.0;
  double b = 0.0;
  friend bool operator==(const BkParams&, const BkParams&) = default;
};

// MSP(z / T_H(z)), T_H = softplus(b + w * log(mean entropy)).
struct HtsParams {
  double b = 0.0;
  double w = 0.0;
  friend bool operator==(const HtsParams&, const HtsParams&) = default;
};

void Validate(const EtsParams& params);
void Validate(const BkParams& params);
void Validate(const HtsParams& params);

// Anything that maps a logit matrix to confidences.
using MethodSpec = std::variant<EstimatorSpec, EtsParams, BkParams, HtsParams>;

// Short human-readable label, e.g. "max-logit/pnorm(p=2)" or "ets".
std::string Describe(const MethodSpec& method);

// ---------------------------------------------------------------------------
// Row-level scores.

double Msp(std::span<const double> row);
double SoftmaxMargin(std::span<const double> row);
double MaxLogit(std::span<const double> row);
double LogitsMargin(std::span<const double> row);
double NegativeEntropy(std::span<const double> row);
double NegativeGini(std::span<const double> row);
double BaseScore(BaseEstimator base, std::span<const double> row);

// ||z||_p for integer p >= 0; p = 0 counts nonzero entries (no outer root).
double LogitPNorm(std::span<const double> row, int p);

// z / T. Throws ParameterError unless T > 0.
std::vector<double> ScaleByTemperature(std::span<const double> row,
                                       double temperature);

// z / (tau * ||z||_p). Throws DegenerateInputError if the norm is zero.
std::vector<double> PNormNormalize(std::span<const double> row, int p,
                                   double tau);

double EtsScore(std::span<const double> row, double w1, double w2,
                double temperature);
double BkScore(std::span<const double> row, double a, double b);

// Temperature T_H used by HTS. Values below kMinHtsTemperature are clamped;
// `clamped` (optional) reports whether that happened.
inline constexpr double kMinHtsTemperature = 1e-12;
double HtsTemperature(std::span<const double> row, double b, double w,
                      bool* clamped = nullptr);
double HtsScore(std::span<const double> row, double b, double w,
                bool* clamped = nullptr);

// ---------------------------------------------------------------------------
// Matrix-level scoring.

struct ScoringDiagnostics {
  // HTS rows whose temperature hit kMinHtsTemperature.
  std::size_t clamped_rows = 0;
};

// Per-row transform then base score. Row-level degenerate inputs raise
// DegenerateInputError carrying the row index.
Confidences ApplyEstimator(const EstimatorSpec& spec,
                           const LogitMatrix& logits);

Confidences ApplyMethod(const MethodSpec& method, const LogitMatrix& logits,
                        ScoringDiagnostics* diagnostics = nullptr);

}  // namespace selclass

#endif  // SELCLASS_ESTIMATORS_H_
