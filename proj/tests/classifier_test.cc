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

#include "selclass/classifier.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "selclass/errors.h"
#include "test_util.h"

namespace selclass {
namespace {

TEST(LogitMatrixTest, RejectsInvalidShapes) {
  EXPECT_THROW(LogitMatrix(0, 2, {}), ParameterError);
  EXPECT_THROW(LogitMatrix(1, 1, {1.0}), ParameterError);
  EXPECT_THROW(LogitMatrix(2, 2, {1.0, 2.0, 3.0}), DimensionError);
}

TEST(LogitMatrixTest, RejectsNonFinite) {
  EXPECT_THROW(
      LogitMatrix(1, 2, {1.0, std::numeric_limits<double>::quiet_NaN()}),
      ParameterError);
  EXPECT_THROW(
      LogitMatrix(1, 2, {std::numeric_limits<double>::infinity(), 0.0}),
      ParameterError);
}

TEST(LogitMatrixTest, SelectRowsKeepsOrder) {
  const LogitMatrix m(3, 2, {0, 1, 2, 3, 4, 5});
  const std::size_t idx[] = {2, 0};
  const auto s = m.SelectRows(idx);
  EXPECT_EQ(s, LogitMatrix(2, 2, {4, 5, 0, 1}));
}

TEST(ArgmaxTest, Examples) {
  EXPECT_EQ(Argmax(std::vector<double>{3, 1, 0}), 0);
  EXPECT_EQ(Argmax(std::vector<double>{5, 5, 1}), 0);
  EXPECT_EQ(Argmax(std::vector<double>{-2, -1}), 1);
}

TEST(ArgmaxTest, TemperatureDoesNotChangePrediction) {
  std::mt19937_64 rng(7);
  const auto logits = testing::RandomLogits(rng, 200, 7);
  const auto preds = ArgmaxPredict(logits);
  for (const double t : {0.1, 0.5, 2.0, 30.0}) {
    std::vector<double> scaled(logits.values().begin(), logits.values().end());
    for (double& v : scaled) v /= t;
    EXPECT_EQ(ArgmaxPredict(LogitMatrix(200, 7, scaled)), preds) << t;
  }
}

TEST(ZeroOneLossTest, Examples) {
  EXPECT_EQ(ZeroOneLoss(std::vector<int>{0, 1}, std::vector<int>{0, 0}),
            (Losses{0, 1}));
  EXPECT_EQ(ZeroOneLoss(std::vector<int>{2, 2, 2}, std::vector<int>{0, 1, 2}),
            (Losses{1, 1, 0}));
  EXPECT_EQ(ZeroOneLoss(std::vector<int>{4, 1}, std::vector<int>{4, 1}),
            (Losses{0, 0}));
  EXPECT_THROW(ZeroOneLoss(std::vector<int>{0}, std::vector<int>{0, 1}),
               DimensionError);
}

TEST(ZeroOneLossTest, MeanLossIsOneMinusAccuracy) {
  std::mt19937_64 rng(3);
  const auto logits = testing::RandomLogits(rng, 321, 5);
  const auto labels = testing::RandomLabels(rng, 321, 5);
  const auto losses = ClassifierLosses(logits, labels);
  const double errors = std::accumulate(losses.begin(), losses.end(), 0.0);
  EXPECT_EQ(errors / 321.0, 1.0 - Accuracy(losses));
}

TEST(ValidateLabelsTest, RangeAndLength) {
  EXPECT_NO_THROW(ValidateLabels(std::vector<int>{0, 2}, 2, 3));
  EXPECT_THROW(ValidateLabels(std::vector<int>{0, 3}, 2, 3), ParameterError);
  EXPECT_THROW(ValidateLabels(std::vector<int>{-1, 0}, 2, 3), ParameterError);
  EXPECT_THROW(ValidateLabels(std::vector<int>{0}, 2, 3), DimensionError);
}

TEST(SoftmaxTest, Examples) {
  for (const double p : Softmax(std::vector<double>{0, 0, 0})) {
    EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
  }
  for (const double p : Softmax(std::vector<double>{-7.5, -7.5, -7.5, -7.5})) {
    EXPECT_NEAR(p, 0.25, 1e-15);
  }
  const auto p = Softmax(std::vector<double>{std::log(2.0), 0.0});
  EXPECT_NEAR(p[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(p[1], 1.0 / 3.0, 1e-15);
}

TEST(SoftmaxTest, ShiftInvariantAndNormalized) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1e4);
  std::uniform_real_distribution<double> shift(-50.0, 50.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> z(1 + trial % 40 + 1);
    for (double& v : z) v = normal(rng);
    const auto p = Softmax(z);
    double sum = 0.0;
    for (const double v : p) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);

    std::vector<double> small(z.size());
    for (double& v : small) v = normal(rng) * 1e-3;
    const double a = shift(rng);
    std::vector<double> shifted = small;
    for (double& v : shifted) v += a;
    const auto p0 = Softmax(small);
    const auto p1 = Softmax(shifted);
    for (std::size_t j = 0; j < z.size(); ++j) {
      EXPECT_NEAR(p0[j], p1[j], 1e-12);
    }
  }
}

TEST(SoftmaxTest, MatchesLibmReference) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> z(17);
    for (double& v : z) v = normal(rng);
    const double m = *std::max_element(z.begin(), z.end());
    long double total = 0.0L;
    for (const double v : z) total += std::exp(static_cast<long double>(v - m));
    const auto p = Softmax(z);
    for (std::size_t j = 0; j < z.size(); ++j) {
      const long double ref =
          std::exp(static_cast<long double>(z[j] - m)) / total;
      EXPECT_NEAR(p[j], static_cast<double>(ref),
                  1e-15 + 1e-13 * static_cast<double>(ref));
    }
  }
}

}  // namespace
}  // namespace selclass
