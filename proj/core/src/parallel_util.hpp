#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace ceqp::detail {

// Runs body(0..n_tasks-1) on up to `workers` threads (0 = one per task,
// capped by hardware concurrency). Each task writes only its own slots, so
// results are independent of scheduling; the first exception in task order
// is rethrown after the join.
inline void parallel_for_indices(int n_tasks, int workers,
                                 const std::function<void(int)>& body) {
  if (n_tasks <= 0) return;
  int thread_budget = workers > 0 ? workers
                                  : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  thread_budget = std::min(thread_budget, n_tasks);

  std::vector<std::exception_ptr> errors(n_tasks);
  if (thread_budget <= 1) {
    for (int i = 0; i < n_tasks; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(thread_budget);
    for (int t = 0; t < thread_budget; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ceqp::detail
