#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace firmnet {

// Static block partition of [0, n) across `threads` workers. Work items must
// be independent; callers keep determinism by writing results into
// preallocated per-index slots and reducing in index order afterwards.
template <typename Fn>
void parallel_for(size_t n, int threads, Fn&& fn) {
  if (n == 0) return;
  size_t workers = threads < 1 ? 1 : static_cast<size_t>(threads);
  workers = std::min(workers, n);
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  size_t chunk = (n + workers - 1) / workers;
  for (size_t w = 0; w < workers; ++w) {
    size_t begin = w * chunk;
    size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] {
      for (size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace firmnet
