#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace tnp {

/// Runs fn(i) for i in [0, n). Work is split across hardware threads; callers
/// must write results into preallocated slots indexed by i so the outcome is
/// independent of scheduling. Nested calls run sequentially.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  static thread_local bool inside = false;
  unsigned hw = std::thread::hardware_concurrency();
  if (inside || hw <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  unsigned workers = hw < n ? hw : static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      inside = true;
      for (std::size_t i = w; i < n; i += workers) fn(i);
      inside = false;
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace tnp
