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

#include <cmath>
#include <string>
#include <utility>

#include "internal/fast_exp.h"
#include "selclass/errors.h"

namespace selclass {

LogitMatrix::LogitMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ < 1) throw ParameterError("logit matrix needs at least one row");
  if (cols_ < 2)
    throw ParameterError("logit matrix needs at least two classes");
  if (values_.size() != rows_ * cols_) {
    throw DimensionError("logit matrix has " + std::to_string(values_.size()) +
                         " values, expected " + std::to_string(rows_) + " x " +
                         std::to_string(cols_));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ParameterError("non-finite logit at row " +
                           std::to_string(i / cols_) + ", column " +
                           std::to_string(i % cols_));
    }
  }
}

LogitMatrix LogitMatrix::SelectRows(
    std::span<const std::size_t> indices) const {
  std::vector<double> out;
  out.reserve(indices.size() * cols_);
  for (std::size_t i : indices) {
    if (i >= rows_) throw DimensionError("row index out of range");
    auto r = row(i);
    out.insert(out.end(), r.begin(), r.end());
  }
  return LogitMatrix(indices.size(), cols_, std::move(out));
}

void ValidateLabels(std::span<const int> labels, std::size_t rows,
                    std::size_t num_classes) {
  if (labels.size() != rows) {
    throw DimensionError("got " + std::to_string(labels.size()) +
                         " labels for " + std::to_string(rows) + " rows");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= num_classes) {
      throw ParameterError("label " + std::to_string(labels[i]) + " at row " +
                           std::to_string(i) + " is outside [0, " +
                           std::to_string(num_classes) + ")");
    }
  }
}

Labels SelectLabels(std::span<const int> labels,
                    std::span<const std::size_t> indices) {
  Labels out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= labels.size()) throw DimensionError("label index out of range");
    out.push_back(labels[i]);
  }
  return out;
}

int Argmax(std::span<const double> row) {
  int best = 0;
  for (std::size_t k = 1; k < row.size(); ++k) {
    if (row[k] > row[best]) best = static_cast<int>(k);
  }
  return best;
}

Predictions ArgmaxPredict(const LogitMatrix& logits) {
  Predictions out(logits.rows());
  for (std::size_t i = 0; i < logits.rows(); ++i)
    out[i] = Argmax(logits.row(i));
  return out;
}

Losses ZeroOneLoss(std::span<const int> predictions,
                   std::span<const int> labels) {
  if (predictions.size() != labels.size()) {
    throw DimensionError("predictions and labels differ in length");
  }
  Losses out(predictions.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = predictions[i] != labels[i] ? 1 : 0;
  }
  return out;
}

Losses ClassifierLosses(const LogitMatrix& logits,
                        std::span<const int> labels) {
  return ZeroOneLoss(ArgmaxPredict(logits), labels);
}

double Accuracy(std::span<const std::uint8_t> losses) {
  if (losses.empty()) throw DimensionError("accuracy of an empty loss vector");
  std::size_t errors = 0;
  for (auto l : losses) errors += l;
  return 1.0 - static_cast<double>(errors) / static_cast<double>(losses.size());
}

std::vector<double> Softmax(std::span<const double> row) {
  std::vector<double> out(row.size());
  if (row.empty()) return out;
  const double m = row[Argmax(row)];
  double sum = 0.0;
  for (std::size_t k = 0; k < row.size(); ++k) {
    out[k] = internal::ExpNonPositive(row[k] - m);
    sum += out[k];
  }
  for (double& v : out) v /= sum;
  return out;
}

}  // namespace selclass
