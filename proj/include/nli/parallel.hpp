#pragma once

// Minimal parallel map over an index range.  Grid points in sweeps are
// independent, so evaluation parallelizes embarrassingly; output order is
// fixed by index regardless of scheduling.  The NLI_THREADS environment
// variable caps the worker count.

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nli {

/// Worker-count budget: NLI_THREADS if set (minimum 1), else the hardware
/// concurrency.
inline int thread_budget() {
  if (const char* env = std::getenv("NLI_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Invoke f(i) for i in [0, n); f must be safe to call concurrently.
/// The first exception thrown by any worker is rethrown to the caller.
template <class F>
void parallel_for(int n, F&& f) {
  const int workers = std::min(thread_budget(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace nli
