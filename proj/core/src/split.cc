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

#include "selclass/split.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "selclass/errors.h"

namespace selclass {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t Mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(Mix(Mix(seed + kGolden) ^ (stream * kGolden + 1))) {}

std::uint64_t CounterRng::Next() { return Mix(key_ + (++counter_) * kGolden); }

std::uint64_t CounterRng::Below(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("bound must be positive");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = Next();
  } while (x >= limit);
  return x % bound;
}

double CounterRng::Uniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

double CounterRng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - U lies in (0, 1], so the log is finite.
  const double radius = std::sqrt(-2.0 * std::log(1.0 - Uniform()));
  const double angle = 2.0 * std::numbers::pi * Uniform();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t k,
                                       std::uint64_t seed,
                                       std::uint64_t stream) {
  if (k > n) throw ParameterError("cannot sample more indices than exist");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  CounterRng rng(seed, stream);
  // Partial Fisher-Yates: the first k slots are a uniform k-subset.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.Below(n - i);
    std::swap(perm[i], perm[j]);
  }
  perm.resize(k);
  std::sort(perm.begin(), perm.end());
  return perm;
}

Split MakeSplit(std::size_t n, const SplitSpec& spec, std::size_t repetition) {
  if (spec.tuning_size == 0 || spec.tuning_size >= n) {
    throw ParameterError("tuning size " + std::to_string(spec.tuning_size) +
                         " must be in [1, " + std::to_string(n) + ")");
  }
  if (repetition >= spec.repetitions) {
    throw ParameterError("repetition index out of range");
  }
  Split out;
  out.tuning = SampleIndices(n, spec.tuning_size, spec.seed, repetition);
  out.test.reserve(n - spec.tuning_size);
  std::size_t t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (t < out.tuning.size() && out.tuning[t] == i) {
      ++t;
    } else {
      out.test.push_back(i);
    }
  }
  return out;
}

}  // namespace selclass
