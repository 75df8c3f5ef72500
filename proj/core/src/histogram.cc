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

#include "selclass/histogram.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "selclass/errors.h"

namespace selclass {

std::vector<HistogramBin> ConfidenceHistogram(std::span<const double> scores,
                                              std::size_t bins) {
  if (bins == 0) throw ParameterError("bins must be positive");
  if (scores.empty()) throw ParameterError("no scores to bin");
  const auto [min_it, max_it] =
      std::minmax_element(scores.begin(), scores.end());
  const double lo = *min_it;
  const double hi = *max_it;
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw ParameterError("scores must be finite");
  }
  const double span = hi - lo;
  const double nb = static_cast<double>(bins);

  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lower = lo + span * (static_cast<double>(b) / nb);
    out[b].upper =
        b + 1 == bins ? hi : lo + span * (static_cast<double>(b + 1) / nb);
  }
  for (const double x : scores) {
    std::size_t b = 0;
    if (span > 0.0) {
      b = static_cast<std::size_t>(std::floor((x - lo) / span * nb));
      b = std::min(b, bins - 1);
    }
    ++out[b].count;
  }
  return out;
}

std::string FormatHistogram(const std::vector<HistogramBin>& bins) {
  std::string out;
  char buf[96];
  for (const auto& bin : bins) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %zu\n", bin.lower, bin.upper,
                  bin.count);
    out += buf;
  }
  return out;
}

}  // namespace selclass
