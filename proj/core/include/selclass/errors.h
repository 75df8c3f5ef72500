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

#ifndef SELCLASS_ERRORS_H_
#define SELCLASS_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace selclass {

// Input shapes do not agree (e.g. confidences vs. losses of different length).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A hyperparameter or argument is outside its valid range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A logit row cannot be transformed, e.g. its p-norm is zero.
class DegenerateInputError : public std::domain_error {
 public:
  DegenerateInputError(const std::string& what, std::size_t row)
      : std::domain_error(what), row_(row) {}

  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

// A metric has a zero denominator for the given data (e.g. NAURC of a
// classifier with no errors).
class UndefinedMetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A dataset, spec, config or report file is malformed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace selclass

#endif  // SELCLASS_ERRORS_H_
