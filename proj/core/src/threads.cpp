#include "circnet/threads.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace circnet {

std::size_t worker_threads() {
  static const std::size_t cached = [] {
    const char* env = std::getenv("CIRCNET_THREADS");
    if (!env) return std::size_t(1);
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) return std::size_t(1);
    if (v > 64) return std::size_t(64);
    return static_cast<std::size_t>(v);
  }();
  return cached;
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (end <= begin) return;
  const std::size_t n = end - begin;
  std::size_t threads = worker_threads();
  if (threads > n) threads = n;
  if (threads <= 1) {
    fn(begin, end);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t lo = begin + t * chunk;
    if (lo >= end) break;
    const std::size_t hi = lo + chunk < end ? lo + chunk : end;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace circnet
