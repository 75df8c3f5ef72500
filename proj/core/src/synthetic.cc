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

#include "selclass/synthetic.h"

#include <cmath>
#include <string>
#include <vector>

#include "internal/scoring.h"
#include "selclass/errors.h"
#include "selclass/split.h"

namespace selclass {
namespace {

// Stream reserved for the pilot sample; rows use streams 0..n-1.
constexpr std::uint64_t kPilotStream = ~std::uint64_t{0};
constexpr std::size_t kPilotRows = 2000;
constexpr int kBisectionSteps = 50;
constexpr double kMaxSignal = 100.0;

double MeanMsp(const std::vector<double>& noise, std::size_t c, double s,
               std::vector<double>* row) {
  const std::size_t rows = noise.size() / c;
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    row->assign(noise.begin() + i * c, noise.begin() + (i + 1) * c);
    (*row)[0] += s;
    total += internal::ScoreScaled(BaseEstimator::kMsp, *row,
                                   internal::ComputeRowStats(*row), 1.0);
  }
  return total / static_cast<double>(rows);
}

}  // namespace

std::string_view DistortionModeName(DistortionMode mode) {
  switch (mode) {
    case DistortionMode::kNone:
      return "none";
    case DistortionMode::kNormInflation:
      return "norm-inflation";
    case DistortionMode::kUnderconfidence:
      return "underconfidence";
  }
  return "";
}

std::optional<DistortionMode> ParseDistortionMode(std::string_view name) {
  if (name == "none") return DistortionMode::kNone;
  if (name == "norm-inflation") return DistortionMode::kNormInflation;
  if (name == "underconfidence") return DistortionMode::kUnderconfidence;
  return std::nullopt;
}

void SyntheticModelSpec::Validate() const {
  if (n == 0) throw ParameterError("n must be positive");
  if (c < 2) throw ParameterError("c must be at least 2");
  if (!(base_accuracy > 0.0 && base_accuracy < 1.0)) {
    throw ParameterError("base accuracy must be in (0, 1)");
  }
  if (!(std::abs(norm_log_mean) <= 10.0)) {
    throw ParameterError("norm log-mean must be in [-10, 10]");
  }
  if (!(norm_log_sigma >= 0.0 && norm_log_sigma <= 3.0)) {
    throw ParameterError("norm log-sigma must be in [0, 3]");
  }
  if (!(underconfidence_factor > 1.0 &&
        std::isfinite(underconfidence_factor))) {
    throw ParameterError("underconfidence factor must be finite and > 1");
  }
}

double SyntheticSignal(const SyntheticModelSpec& spec) {
  spec.Validate();
  const std::size_t c = spec.c;
  std::vector<double> noise(kPilotRows * c);
  CounterRng rng(spec.seed, kPilotStream);
  for (double& v : noise) v = rng.Normal();

  std::vector<double> row;
  if (MeanMsp(noise, c, 0.0, &row) >= spec.base_accuracy) return 0.0;
  double lo = 0.0;
  double hi = kMaxSignal;
  for (int step = 0; step < kBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    (MeanMsp(noise, c, mid, &row) < spec.base_accuracy ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Dataset GenerateSynthetic(const SyntheticModelSpec& spec) {
  const double signal = SyntheticSignal(spec);
  const std::size_t n = spec.n;
  const std::size_t c = spec.c;
  std::vector<double> values(n * c);
  Labels labels(n);
  std::vector<double> u(c);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(spec.seed, i);
    const auto anchor = static_cast<std::size_t>(rng.Below(c));
    for (double& v : u) v = rng.Normal();
    u[anchor] += signal;

    const auto probs = Softmax(u);
    const double draw = rng.Uniform();
    double cumulative = 0.0;
    std::size_t label = c - 1;
    for (std::size_t j = 0; j < c; ++j) {
      cumulative += probs[j];
      if (draw < cumulative) {
        label = j;
        break;
      }
    }
    labels[i] = static_cast<int>(label);

    double factor = 1.0;
    if (spec.mode == DistortionMode::kNormInflation) {
      factor =
          std::exp(spec.norm_log_mean + spec.norm_log_sigma * rng.Normal());
    } else if (spec.mode == DistortionMode::kUnderconfidence) {
      factor = 1.0 / spec.underconfidence_factor;
    }
    for (std::size_t j = 0; j < c; ++j) {
      values[i * c + j] =
          static_cast<double>(static_cast<float>(u[j] * factor));
    }
  }
  return Dataset{LogitMatrix(n, c, std::move(values)), std::move(labels)};
}

}  // namespace selclass
