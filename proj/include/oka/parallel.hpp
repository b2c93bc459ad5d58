#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace oka {

// Runs fn(0..n-1) on `workers` threads. Callers must make per-index work
// independent and aggregate results by index afterwards, which keeps output
// deterministic regardless of the worker count.
inline void parallel_for(size_t n, size_t workers,
                         const std::function<void(size_t)>& fn) {
  if (workers <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  size_t count = std::min(workers, n);
  pool.reserve(count);
  for (size_t w = 0; w < count; ++w)
    pool.emplace_back([&] {
      size_t i;
      while (!failed.load(std::memory_order_relaxed) &&
             (i = next.fetch_add(1)) < n) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          failed.store(true);
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace oka
