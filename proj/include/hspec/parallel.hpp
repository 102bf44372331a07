#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace hspec {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results must be
// written to per-index slots by the caller; work items are independent, so
// parallel and serial runs produce identical output.
inline void parallel_for_index(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const int nw = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nw));
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < nw; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hspec
