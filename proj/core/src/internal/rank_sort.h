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

#ifndef SELCLASS_INTERNAL_RANK_SORT_H_
#define SELCLASS_INTERNAL_RANK_SORT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace selclass::internal {

// Produces the canonical rank order (score descending, index ascending).
// Keeps its buffers between calls, so one instance per worker thread.
class RankSorter {
 public:
  std::span<const std::uint32_t> Sort(std::span<const double> scores);

 private:
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> keys_tmp_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> order_tmp_;
};

// AURC given the losses and an accept order.
double AurcFromOrder(std::span<const std::uint32_t> order,
                     std::span<const std::uint8_t> losses);

}  // namespace selclass::internal

#endif  // SELCLASS_INTERNAL_RANK_SORT_H_
