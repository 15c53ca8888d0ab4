#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace symseq {

/// Worker cap: SYMSEQ_THREADS when set, hardware concurrency otherwise.
inline int max_threads() {
  static const int cap = [] {
    if (const char* env = std::getenv("SYMSEQ_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
  }();
  return cap;
}

/// Runs fn(i) for i in [0, n). Results land in index order, so reductions
/// over the returned vector do not depend on scheduling.
template <typename T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn) {
  std::vector<T> out(static_cast<size_t>(std::max(n, 0)));
  int nt = std::min(max_threads(), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) out[static_cast<size_t>(i)] = fn(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace symseq
