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

#ifndef SELCLASS_HISTOGRAM_H_
#define SELCLASS_HISTOGRAM_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace selclass {

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

// Equal-width bins over [min, max] of the scores; the maximum falls in the
// last bin. Throws ParameterError for bins == 0 or no scores.
std::vector<HistogramBin> ConfidenceHistogram(std::span<const double> scores,
                                              std::size_t bins);

// "lower upper count" per line.
std::string FormatHistogram(const std::vector<HistogramBin>& bins);

}  // namespace selclass

#endif  // SELCLASS_HISTOGRAM_H_
