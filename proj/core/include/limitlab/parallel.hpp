#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace limitlab {

// Splits [0, count) into contiguous chunks and runs body(begin, end) on up
// to `workers` threads. Chunk boundaries depend only on count and workers,
// and callers write to disjoint slots, so results never depend on the
// schedule.
template <class Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
  const std::size_t w = static_cast<std::size_t>(std::max(1, workers));
  if (w == 1 || count < 2 * w) {
    body(std::size_t{0}, count);
    return;
  }
  const std::size_t chunk = (count + w - 1) / w;
  std::vector<std::thread> pool;
  for (std::size_t begin = chunk; begin < count; begin += chunk) {
    pool.emplace_back([&body, begin, chunk, count] { body(begin, std::min(count, begin + chunk)); });
  }
  body(std::size_t{0}, std::min(count, chunk));
  for (auto& t : pool) t.join();
}

}  // namespace limitlab
