#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ksforge {

/// Worker count: KSFORGE_JOBS if set and positive, else hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("KSFORGE_JOBS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(task) for task in [0, tasks) on up to `workers` threads. Tasks are
/// claimed dynamically; callers write into per-task slots so the merged result
/// does not depend on scheduling. The first exception thrown is rethrown.
template <class Fn>
void parallel_for(int tasks, int workers, Fn&& fn) {
  workers = std::clamp(workers, 1, std::max(tasks, 1));
  if (workers == 1) {
    for (int t = 0; t < tasks; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int t; (t = next.fetch_add(1)) < tasks;) {
        try {
          fn(t);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = tasks;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ksforge
