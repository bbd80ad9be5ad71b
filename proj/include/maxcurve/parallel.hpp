#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace maxcurve {

unsigned default_threads();

// Sums fn(i) over [0, n) split into contiguous chunks. Integer sums, so the
// result does not depend on the thread count.
template <class Fn>
std::uint64_t parallel_sum(std::uint64_t n, unsigned threads, Fn fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(n, 1))));
  if (threads == 1) {
    std::uint64_t s = 0;
    for (std::uint64_t i = 0; i < n; ++i) s += fn(i);
    return s;
  }
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::jthread> pool;
  const std::uint64_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const std::uint64_t lo = t * chunk, hi = std::min(n, lo + chunk);
      std::uint64_t s = 0;
      for (std::uint64_t i = lo; i < hi; ++i) s += fn(i);
      partial[t] = s;
    });
  }
  pool.clear();
  std::uint64_t s = 0;
  for (auto v : partial) s += v;
  return s;
}

}  // namespace maxcurve
