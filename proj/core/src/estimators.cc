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

#include "selclass/estimators.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "internal/scoring.h"
#include "selclass/errors.h"

namespace selclass {
namespace {

bool IsPositiveFinite(double v) { return std::isfinite(v) && v > 0.0; }

void CheckTemperature(double temperature) {
  if (!IsPositiveFinite(temperature)) {
    throw ParameterError("temperature must be positive and finite, got " +
                         std::to_string(temperature));
  }
}

void CheckRange(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi)) {
    throw ParameterError(std::string(name) + " = " + std::to_string(v) +
                         " is outside [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
  }
}

double IntPow(double x, int p) {
  double result = 1.0;
  while (p > 0) {
    if (p & 1) result *= x;
    x *= x;
    p >>= 1;
  }
  return result;
}

double Softplus(double c) {
  if (c > 0.0) return c + std::log1p(std::exp(-c));
  return std::log1p(std::exp(c));
}

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::string_view BaseEstimatorName(BaseEstimator base) {
  switch (base) {
    case BaseEstimator::kMsp:
      return "msp";
    case BaseEstimator::kSoftmaxMargin:
      return "softmax-margin";
    case BaseEstimator::kMaxLogit:
      return "max-logit";
    case BaseEstimator::kLogitsMargin:
      return "logits-margin";
    case BaseEstimator::kNegativeEntropy:
      return "neg-entropy";
    case BaseEstimator::kNegativeGini:
      return "neg-gini";
  }
  return "unknown";
}

std::optional<BaseEstimator> ParseBaseEstimator(std::string_view name) {
  for (BaseEstimator b : kAllBaseEstimators) {
    if (BaseEstimatorName(b) == name) return b;
  }
  return std::nullopt;
}

bool IsSoftmaxBased(BaseEstimator base) {
  return base != BaseEstimator::kMaxLogit &&
         base != BaseEstimator::kLogitsMargin;
}

EstimatorSpec EstimatorSpec::Make(BaseEstimator base, Transform transform) {
  if (const auto* ts = std::get_if<TemperatureTransform>(&transform)) {
    if (!IsSoftmaxBased(base)) {
      throw ParameterError(
          "temperature scaling does not change the ranking of " +
          std::string(BaseEstimatorName(base)));
    }
    CheckTemperature(ts->temperature);
  } else if (auto* pn = std::get_if<PNormTransform>(&transform)) {
    if (pn->p < 0) {
      throw ParameterError("p must be a nonnegative integer, got " +
                           std::to_string(pn->p));
    }
    if (!IsSoftmaxBased(base)) {
      pn->tau = 1.0;
    } else if (!IsPositiveFinite(pn->tau)) {
      throw ParameterError("tau must be positive and finite, got " +
                           std::to_string(pn->tau));
    }
  }
  return EstimatorSpec(base, std::move(transform), false);
}

EstimatorSpec EstimatorSpec::MspFallback() {
  return EstimatorSpec(BaseEstimator::kMsp, RawTransform{}, true);
}

void Validate(const EtsParams& params) {
  CheckRange(params.w1, 0.0, 1.0, "ETS w1");
  CheckRange(params.w2, 0.0, 1.0, "ETS w2");
  CheckTemperature(params.temperature);
}

void Validate(const BkParams& params) {
  CheckRange(params.a, -1.0, 1.0, "BK a");
  CheckRange(params.b, -1.0, 1.0, "BK b");
}

void Validate(const HtsParams& params) {
  CheckRange(params.b, -3.0, 1.0, "HTS b");
  CheckRange(params.w, -1.0, 1.0, "HTS w");
}

std::string Describe(const MethodSpec& method) {
  struct Visitor {
    std::string operator()(const EstimatorSpec& s) const {
      std::string out(BaseEstimatorName(s.base()));
      if (s.fallback_applied()) return out + "/raw(fallback)";
      if (std::holds_alternative<RawTransform>(s.transform())) {
        return out + "/raw";
      }
      if (const auto* ts = std::get_if<TemperatureTransform>(&s.transform())) {
        return out + "/ts(T=" + FormatNumber(ts->temperature) + ")";
      }
      const auto& pn = std::get<PNormTransform>(s.transform());
      return out + "/pnorm(p=" + std::to_string(pn.p) +
             ",tau=" + FormatNumber(pn.tau) + ")";
    }
    std::string operator()(const EtsParams& p) const {
      return "ets(w1=" + FormatNumber(p.w1) + ",w2=" + FormatNumber(p.w2) +
             ",T=" + FormatNumber(p.temperature) + ")";
    }
    std::string operator()(const BkParams& p) const {
      return "bk(a=" + FormatNumber(p.a) + ",b=" + FormatNumber(p.b) + ")";
    }
    std::string operator()(const HtsParams& p) const {
      return "hts(b=" + FormatNumber(p.b) + ",w=" + FormatNumber(p.w) + ")";
    }
  };
  return std::visit(Visitor{}, method);
}

namespace internal {

RowStats ComputeRowStats(std::span<const double> row) {
  RowStats stats;
  const int top = Argmax(row);
  stats.max = row[top];
  stats.second = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (static_cast<int>(k) != top)
      stats.second = std::max(stats.second, row[k]);
  }
  return stats;
}

std::vector<RowStats> ComputeRowStats(const LogitMatrix& logits) {
  std::vector<RowStats> out(logits.rows());
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    out[i] = ComputeRowStats(logits.row(i));
  }
  return out;
}

std::optional<double> PNormScale(std::span<const double> row, int p,
                                 double tau) {
  const double norm = LogitPNorm(row, p);
  if (norm == 0.0) return std::nullopt;
  return 1.0 / (tau * norm);
}

std::optional<double> TransformScale(const Transform& transform,
                                     std::span<const double> row) {
  if (std::holds_alternative<RawTransform>(transform)) return 1.0;
  if (const auto* ts = std::get_if<TemperatureTransform>(&transform)) {
    return 1.0 / ts->temperature;
  }
  const auto& pn = std::get<PNormTransform>(transform);
  return PNormScale(row, pn.p, pn.tau);
}

double MeanEntropy(std::span<const double> row, const RowStats& stats) {
  const double negent =
      SoftmaxScoreFromSums(BaseEstimator::kNegativeEntropy,
                           ScaledSoftmaxSums(row, stats.max, 1.0), stats, 1.0);
  return -negent / static_cast<double>(row.size());
}

double HtsTemperatureFromEntropy(double mean_entropy, double b, double w,
                                 bool* clamped) {
  // w == 0 must not multiply log(0) = -inf.
  const double c = w == 0.0 ? b : b + w * std::log(mean_entropy);
  double t = Softplus(c);
  const bool hit = !(t >= kMinHtsTemperature);
  if (hit) t = kMinHtsTemperature;
  if (clamped != nullptr) *clamped = hit;
  return t;
}

}  // namespace internal

double Msp(std::span<const double> row) {
  return BaseScore(BaseEstimator::kMsp, row);
}
double SoftmaxMargin(std::span<const double> row) {
  return BaseScore(BaseEstimator::kSoftmaxMargin, row);
}
double MaxLogit(std::span<const double> row) {
  return BaseScore(BaseEstimator::kMaxLogit, row);
}
double LogitsMargin(std::span<const double> row) {
  return BaseScore(BaseEstimator::kLogitsMargin, row);
}
double NegativeEntropy(std::span<const double> row) {
  return BaseScore(BaseEstimator::kNegativeEntropy, row);
}
double NegativeGini(std::span<const double> row) {
  return BaseScore(BaseEstimator::kNegativeGini, row);
}

double BaseScore(BaseEstimator base, std::span<const double> row) {
  if (row.size() < 2) throw ParameterError("a logit row needs two classes");
  return internal::ScoreScaled(base, row, internal::ComputeRowStats(row), 1.0);
}

double LogitPNorm(std::span<const double> row, int p) {
  if (p < 0) throw ParameterError("p must be nonnegative");
  if (p == 0) {
    return static_cast<double>(std::count_if(
        row.begin(), row.end(), [](double v) { return v != 0.0; }));
  }
  double largest = 0.0;
  for (double v : row) largest = std::max(largest, std::abs(v));
  if (largest == 0.0) return 0.0;
  if (p == 1) {
    double sum = 0.0;
    for (double v : row) sum += std::abs(v);
    return sum;
  }
  // Scale by the largest magnitude so |z|^p cannot overflow.
  double sum = 0.0;
  for (double v : row) sum += IntPow(std::abs(v) / largest, p);
  return largest * std::pow(sum, 1.0 / p);
}

std::vector<double> ScaleByTemperature(std::span<const double> row,
                                       double temperature) {
  CheckTemperature(temperature);
  std::vector<double> out(row.begin(), row.end());
  for (double& v : out) v /= temperature;
  return out;
}

std::vector<double> PNormNormalize(std::span<const double> row, int p,
                                   double tau) {
  if (!IsPositiveFinite(tau)) throw ParameterError("tau must be positive");
  const double norm = LogitPNorm(row, p);
  if (norm == 0.0) {
    throw DegenerateInputError("p-norm of the logit row is zero", 0);
  }
  std::vector<double> out(row.begin(), row.end());
  for (double& v : out) v /= tau * norm;
  return out;
}

double EtsScore(std::span<const double> row, double w1, double w2,
                double temperature) {
  Validate(EtsParams{w1, w2, temperature});
  const auto stats = internal::ComputeRowStats(row);
  const double scaled =
      internal::ScoreScaled(BaseEstimator::kMsp, row, stats, 1.0 / temperature);
  const double raw =
      internal::ScoreScaled(BaseEstimator::kMsp, row, stats, 1.0);
  return internal::CombineEts(scaled, raw, w1, w2);
}

double BkScore(std::span<const double> row, double a, double b) {
  Validate(BkParams{a, b});
  const auto stats = internal::ComputeRowStats(row);
  return internal::CombineBk(internal::ComputeBkTerms(row, stats), a, b);
}

double HtsTemperature(std::span<const double> row, double b, double w,
                      bool* clamped) {
  Validate(HtsParams{b, w});
  const auto stats = internal::ComputeRowStats(row);
  return internal::HtsTemperatureFromEntropy(internal::MeanEntropy(row, stats),
                                             b, w, clamped);
}

double HtsScore(std::span<const double> row, double b, double w,
                bool* clamped) {
  const double t = HtsTemperature(row, b, w, clamped);
  const auto stats = internal::ComputeRowStats(row);
  return internal::ScoreScaled(BaseEstimator::kMsp, row, stats, 1.0 / t);
}

Confidences ApplyEstimator(const EstimatorSpec& spec,
                           const LogitMatrix& logits) {
  Confidences out(logits.rows());
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    const auto row = logits.row(i);
    const auto scale = internal::TransformScale(spec.transform(), row);
    if (!scale) {
      throw DegenerateInputError(
          "p-norm of logit row " + std::to_string(i) + " is zero", i);
    }
    out[i] = internal::ScoreScaled(spec.base(), row,
                                   internal::ComputeRowStats(row), *scale);
  }
  return out;
}

Confidences ApplyMethod(const MethodSpec& method, const LogitMatrix& logits,
                        ScoringDiagnostics* diagnostics) {
  if (const auto* spec = std::get_if<EstimatorSpec>(&method)) {
    return ApplyEstimator(*spec, logits);
  }
  Confidences out(logits.rows());
  std::size_t clamped_rows = 0;
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    const auto row = logits.row(i);
    if (const auto* ets = std::get_if<EtsParams>(&method)) {
      out[i] = EtsScore(row, ets->w1, ets->w2, ets->temperature);
    } else if (const auto* bk = std::get_if<BkParams>(&method)) {
      out[i] = BkScore(row, bk->a, bk->b);
    } else {
      const auto& hts = std::get<HtsParams>(method);
      bool clamped = false;
      out[i] = HtsScore(row, hts.b, hts.w, &clamped);
      clamped_rows += clamped ? 1 : 0;
    }
  }
  if (diagnostics != nullptr) diagnostics->clamped_rows = clamped_rows;
  return out;
}

}  // namespace selclass
