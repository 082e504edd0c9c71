#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qaplon {

/// Runs fn(task) for task = 0..n_tasks-1 on up to `workers` threads.
/// Tasks are claimed from an atomic counter; the caller is responsible for
/// making task results order-independent. The first exception thrown by any
/// task is rethrown on the calling thread.
inline void parallel_for(std::int64_t n_tasks, int workers,
                         const std::function<void(std::int64_t)>& fn) {
  if (n_tasks <= 0) return;
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers == 1 || n_tasks == 1) {
    for (std::int64_t t = 0; t < n_tasks; ++t) fn(t);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    for (;;) {
      std::int64_t t = next.fetch_add(1, std::memory_order_relaxed);
      if (t >= n_tasks || failed.load(std::memory_order_relaxed)) return;
      try {
        fn(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int spawn = static_cast<int>(std::min<std::int64_t>(workers, n_tasks));
  pool.reserve(spawn);
  for (int w = 0; w < spawn; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qaplon
