#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qbounds {

/// Splits [0, count) into contiguous chunks and runs fn(lo, hi, worker) on a
/// small thread pool. jobs <= 0 means one worker per hardware thread.
inline void parallel_chunks(std::size_t count, int jobs,
                            const std::function<void(std::size_t, std::size_t, int)>& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs) : hw;
  workers = std::max<std::size_t>(1, std::min(workers, count == 0 ? 1 : count));
  if (workers <= 1) {
    fn(0, count, 0);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi, static_cast<int>(w));
  }
  for (auto& t : pool) t.join();
}

}  // namespace qbounds
