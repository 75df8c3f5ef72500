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

#ifndef SELCLASS_CLASSIFIER_H_
#define SELCLASS_CLASSIFIER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace selclass {

// Dense N x C matrix of raw pre-softmax outputs, row-major. Rows are samples.
// Construction validates N >= 1, C >= 2 and that every entry is finite.
class LogitMatrix {
 public:
  LogitMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<const double> values() const { return values_; }

  // Copies the given rows, in the given order.
  LogitMatrix SelectRows(std::span<const std::size_t> indices) const;

  friend bool operator==(const LogitMatrix&, const LogitMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

// 0-based class labels.
using Labels = std::vector<int>;
// Predicted class per sample.
using Predictions = std::vector<int>;
// 0/1 loss per sample.
using Losses = std::vector<std::uint8_t>;
// Confidence per sample. Higher means "accept earlier"; only the induced
// ordering matters.
using Confidences = std::vector<double>;

// Throws DimensionError if the label count differs from `rows`, and
// ParameterError if any label is outside [0, num_classes).
void ValidateLabels(std::span<const int> labels, std::size_t rows,
                    std::size_t num_classes);

Labels SelectLabels(std::span<const int> labels,
                    std::span<const std::size_t> indices);

// Index of the largest entry; ties go to the lowest index.
int Argmax(std::span<const double> row);

Predictions ArgmaxPredict(const LogitMatrix& logits);

Losses ZeroOneLoss(std::span<const int> predictions,
                   std::span<const int> labels);

// Losses of the argmax classifier.
Losses ClassifierLosses(const LogitMatrix& logits, std::span<const int> labels);

double Accuracy(std::span<const std::uint8_t> losses);

// Max-subtracted softmax of one logit row.
std::vector<double> Softmax(std::span<const double> row);

}  // namespace selclass

#endif  // SELCLASS_CLASSIFIER_H_
