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

#ifndef SELCLASS_INTERNAL_PARALLEL_H_
#define SELCLASS_INTERNAL_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace selclass::internal {

inline int ResolveJobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Calls fn(index, worker) for every index in [0, count) using up to `jobs`
// threads (jobs <= 0: one per hardware thread). Indices are handed out in
// increasing order. If any call throws, no further indices are started and
// the exception thrown at the lowest index is rethrown.
template <typename Fn>
void ParallelFor(std::size_t count, int jobs, Fn&& fn) {
  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(ResolveJobs(jobs)),
                            std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i, 0);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mu;
  std::size_t error_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error;

  auto run = [&](int worker) {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i, worker);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) threads.emplace_back(run, w);
  run(0);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

// Number of workers ParallelFor will use; size per-worker scratch with this.
inline int WorkerCount(std::size_t count, int jobs) {
  return static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(ResolveJobs(jobs)),
                            std::max<std::size_t>(count, 1)));
}

}  // namespace selclass::internal

#endif  // SELCLASS_INTERNAL_PARALLEL_H_
