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

#ifndef SELCLASS_SPLIT_H_
#define SELCLASS_SPLIT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace selclass {

// Counter-based generator: output i is a hash of (seed, stream, i), so
// streams are independent and reproducible on every platform.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t Next();
  // Uniform in [0, bound), unbiased. bound must be positive.
  std::uint64_t Below(std::uint64_t bound);
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  // Standard normal (Box-Muller).
  double Normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct SplitSpec {
  std::size_t tuning_size = 5000;
  std::uint64_t seed = 0;
  std::size_t repetitions = 10;

  friend bool operator==(const SplitSpec&, const SplitSpec&) = default;
};

// Disjoint, exhaustive, each sorted ascending.
struct Split {
  std::vector<std::size_t> tuning;
  std::vector<std::size_t> test;
};

// Throws ParameterError unless 0 < tuning_size < n and
// repetition < repetitions.
Split MakeSplit(std::size_t n, const SplitSpec& spec, std::size_t repetition);

// k distinct indices from [0, n), sorted ascending.
std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t k,
                                       std::uint64_t seed,
                                       std::uint64_t stream);

}  // namespace selclass

#endif  // SELCLASS_SPLIT_H_
