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

#ifndef SELCLASS_TESTS_TEST_UTIL_H_
#define SELCLASS_TESTS_TEST_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "selclass/classifier.h"

namespace selclass::testing {

inline LogitMatrix RandomLogits(std::mt19937_64& rng, std::size_t rows,
                                std::size_t cols, double scale = 3.0) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> values(rows * cols);
  for (double& v : values) v = normal(rng);
  return LogitMatrix(rows, cols, std::move(values));
}

inline Labels RandomLabels(std::mt19937_64& rng, std::size_t rows,
                           std::size_t cols) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(cols) - 1);
  Labels labels(rows);
  for (int& y : labels) y = pick(rng);
  return labels;
}

// Labels that agree with the argmax with probability `accuracy`.
inline Labels NoisyLabels(std::mt19937_64& rng, const LogitMatrix& logits,
                          double accuracy) {
  std::bernoulli_distribution keep(accuracy);
  std::uniform_int_distribution<int> pick(0,
                                          static_cast<int>(logits.cols()) - 1);
  Labels labels = ArgmaxPredict(logits);
  for (int& y : labels) {
    if (!keep(rng)) y = pick(rng);
  }
  return labels;
}

inline std::vector<double> RandomScores(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out(n);
  for (double& v : out) v = unit(rng);
  return out;
}

}  // namespace selclass::testing

#endif  // SELCLASS_TESTS_TEST_UTIL_H_
