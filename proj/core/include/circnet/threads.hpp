#ifndef CIRCNET_THREADS_HPP
#define CIRCNET_THREADS_HPP

#include <cstddef>
#include <functional>

namespace circnet {

// Worker-thread cap from CIRCNET_THREADS (default 1). Read once per process.
std::size_t worker_threads();

// Splits [begin, end) into at most worker_threads() contiguous chunks and
// runs fn(chunk_begin, chunk_end) on each, joining before return. With one
// thread this degrades to a plain call on the whole range.
//
// Callers keep determinism independent of the thread count by writing only
// to per-index slots inside fn and doing any floating-point reductions in a
// fixed serial order afterwards.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace circnet

#endif  // CIRCNET_THREADS_HPP
