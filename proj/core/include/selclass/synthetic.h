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

#ifndef SELCLASS_SYNTHETIC_H_
#define SELCLASS_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "selclass/dataset_io.h"

namespace selclass {

enum class DistortionMode { kNone, kNormInflation, kUnderconfidence };

std::string_view DistortionModeName(DistortionMode mode);
std::optional<DistortionMode> ParseDistortionMode(std::string_view name);

// Synthetic "model" outputs. Each row has a latent logit vector
// u = s * e_k + g with k uniform over classes and g standard normal; the
// label is drawn from softmax(u), so u is calibrated at T = 1 and accuracy
// equals E[MSP(u)]. s is chosen so that this expectation matches
// base_accuracy. The stored logits are u after the distortion, rounded to
// float32.
struct SyntheticModelSpec {
  std::size_t n = 10000;
  std::size_t c = 100;
  double base_accuracy = 0.75;
  // norm-inflation: row i is multiplied by exp(norm_log_mean +
  // norm_log_sigma * xi_i), xi_i standard normal.
  double norm_log_mean = 1.0;
  double norm_log_sigma = 1.0;
  // underconfidence: all logits are divided by this factor (> 1).
  double underconfidence_factor = 3.0;
  DistortionMode mode = DistortionMode::kNone;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Signal strength s for the configured class count and target accuracy.
double SyntheticSignal(const SyntheticModelSpec& spec);

Dataset GenerateSynthetic(const SyntheticModelSpec& spec);

}  // namespace selclass

#endif  // SELCLASS_SYNTHETIC_H_
