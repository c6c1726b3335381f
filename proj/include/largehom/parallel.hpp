#pragma once

// Minimal deterministic parallel-for: results land in index-addressed
// slots, so the output never depends on the worker count.

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace largehom {

inline int& thread_budget() {
  static int budget = static_cast<int>(std::thread::hardware_concurrency());
  return budget;
}

inline void set_thread_budget(int n) { thread_budget() = n < 1 ? 1 : n; }

inline void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(count, std::max(1, thread_budget()));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace largehom
