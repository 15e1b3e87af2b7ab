#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace dendro {

// runs fn(i) for i in [0, n); results are whatever fn writes at index i,
// so assembly order never depends on scheduling
inline void parallel_for_indexed(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  int workers = std::min(jobs, n);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace dendro
