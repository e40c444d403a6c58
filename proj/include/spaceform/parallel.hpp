#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace spaceform {

// Static block partition of [0, n) over `threads` workers. fn(k) must only
// write to slot k of its outputs.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const std::size_t t = std::clamp<std::size_t>(threads > 0 ? threads : 1, 1, std::max<std::size_t>(n, 1));
  if (t == 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(t);
  const std::size_t chunk = (n + t - 1) / t;
  for (std::size_t w = 0; w < t; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t k = lo; k < hi; ++k) fn(k);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace spaceform
