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

#ifndef SELCLASS_INTERNAL_SCORING_H_
#define SELCLASS_INTERNAL_SCORING_H_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "internal/fast_exp.h"
#include "selclass/classifier.h"
#include "selclass/estimators.h"

namespace selclass::internal {

// Largest and second-largest logit of a row (equal when the max is tied).
struct RowStats {
  double max = 0.0;
  double second = 0.0;
};

RowStats ComputeRowStats(std::span<const double> row);
std::vector<RowStats> ComputeRowStats(const LogitMatrix& logits);

// With e_j = exp(beta * (z_j - max)):
//   sum = sum_j e_j, gap_sum = sum_j e_j * (z_j - max), sq_sum = sum_j e_j^2.
// Softmax of beta * z is e / sum; every softmax-based score derives from these.
struct SoftmaxSums {
  double sum = 0.0;
  double gap_sum = 0.0;
  double sq_sum = 0.0;
};

inline SoftmaxSums ScaledSoftmaxSums(std::span<const double> row,
                                     double row_max, double beta) {
  constexpr std::size_t kLanes = 8;
  double s[kLanes] = {};
  double q[kLanes] = {};
  double g[kLanes] = {};
  const double* z = row.data();
  const std::size_t n = row.size();
  std::size_t j = 0;
#if defined(SELCLASS_HAVE_EXP8)
  {
    const __m512d vmax = _mm512_set1_pd(row_max);
    const __m512d vbeta = _mm512_set1_pd(beta);
    __m512d vs = _mm512_setzero_pd();
    __m512d vq = _mm512_setzero_pd();
    __m512d vg = _mm512_setzero_pd();
    for (; j + kLanes <= n; j += kLanes) {
      const __m512d gap = _mm512_sub_pd(_mm512_loadu_pd(z + j), vmax);
      const __m512d e = ExpNonPositive8(_mm512_mul_pd(vbeta, gap));
      vs = _mm512_add_pd(vs, e);
      vq = _mm512_fmadd_pd(e, gap, vq);
      vg = _mm512_fmadd_pd(e, e, vg);
    }
    _mm512_storeu_pd(s, vs);
    _mm512_storeu_pd(q, vq);
    _mm512_storeu_pd(g, vg);
  }
#endif
  for (; j + kLanes <= n; j += kLanes) {
    for (std::size_t k = 0; k < kLanes; ++k) {
      const double gap = z[j + k] - row_max;
      const double e = ExpNonPositive(beta * gap);
      s[k] += e;
      q[k] = MulAdd(e, gap, q[k]);
      g[k] = MulAdd(e, e, g[k]);
    }
  }
  for (std::size_t k = 0; k < n - j; ++k) {
    const double gap = z[j + k] - row_max;
    const double e = ExpNonPositive(beta * gap);
    s[k] += e;
    q[k] = MulAdd(e, gap, q[k]);
    g[k] = MulAdd(e, e, g[k]);
  }
  SoftmaxSums out;
  out.sum = ((s[0] + s[1]) + (s[2] + s[3])) + ((s[4] + s[5]) + (s[6] + s[7]));
  out.gap_sum =
      ((q[0] + q[1]) + (q[2] + q[3])) + ((q[4] + q[5]) + (q[6] + q[7]));
  out.sq_sum =
      ((g[0] + g[1]) + (g[2] + g[3])) + ((g[4] + g[5]) + (g[6] + g[7]));
  return out;
}

// Score of a softmax-based base for the row scaled by beta.
inline double SoftmaxScoreFromSums(BaseEstimator base, const SoftmaxSums& sums,
                                   const RowStats& stats, double beta) {
  switch (base) {
    case BaseEstimator::kMsp:
      return 1.0 / sums.sum;
    case BaseEstimator::kSoftmaxMargin:
      return (1.0 - ExpNonPositive(beta * (stats.second - stats.max))) /
             sums.sum;
    case BaseEstimator::kNegativeEntropy:
      return beta * sums.gap_sum / sums.sum - std::log(sums.sum);
    case BaseEstimator::kNegativeGini:
      return -1.0 + sums.sq_sum / (sums.sum * sums.sum);
    case BaseEstimator::kMaxLogit:
    case BaseEstimator::kLogitsMargin:
      break;
  }
  return 0.0;
}

// Score of `base` on beta * z.
inline double ScoreScaled(BaseEstimator base, std::span<const double> row,
                          const RowStats& stats, double beta) {
  switch (base) {
    case BaseEstimator::kMaxLogit:
      return stats.max * beta;
    case BaseEstimator::kLogitsMargin:
      return (stats.max - stats.second) * beta;
    default:
      return SoftmaxScoreFromSums(base, ScaledSoftmaxSums(row, stats.max, beta),
                                  stats, beta);
  }
}

// 1 / (tau * ||z||_p), or nullopt when the norm is zero.
std::optional<double> PNormScale(std::span<const double> row, int p,
                                 double tau);

// Multiplier the transform applies to the row: 1, 1/T, or the p-norm scale.
std::optional<double> TransformScale(const Transform& transform,
                                     std::span<const double> row);

// Mean entropy -(1/C) sum_k s_k log s_k of the softmax.
double MeanEntropy(std::span<const double> row, const RowStats& stats);

double HtsTemperatureFromEntropy(double mean_entropy, double b, double w,
                                 bool* clamped);

// MSP and 1 - (runner-up probability) at beta = 1, the two BK ingredients.
struct BkTerms {
  double msp = 0.0;
  double complement = 0.0;
};

inline BkTerms ComputeBkTerms(std::span<const double> row,
                              const RowStats& stats) {
  const auto sums = ScaledSoftmaxSums(row, stats.max, 1.0);
  return {1.0 / sums.sum,
          1.0 - ExpNonPositive(stats.second - stats.max) / sums.sum};
}

inline double CombineBk(const BkTerms& terms, double a, double b) {
  return a * terms.msp + b * terms.complement;
}

inline double CombineEts(double scaled_msp, double raw_msp, double w1,
                         double w2) {
  return w1 * scaled_msp + w2 * raw_msp;
}

}  // namespace selclass::internal

#endif  // SELCLASS_INTERNAL_SCORING_H_
