#ifndef GREENBALL_PARALLEL_HPP_
#define GREENBALL_PARALLEL_HPP_

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace greenball::par {

/// Number of worker threads quadrature reductions may use.  Initialized
/// lazily from the GREENBALL_THREADS environment variable (default: hardware
/// concurrency), clamped to [1, 64].  Thread count never changes numerical
/// results: work is partitioned into fixed-size chunks that depend only on
/// the problem size, and per-chunk partial results are combined in chunk
/// order.
int thread_budget();

/// Overrides the budget (used by tests to compare serial vs parallel runs).
void set_thread_budget(int budget);

/// Calls fn(chunk_index, begin, end) for every chunk of [0, count) of size
/// `chunk` (the last chunk may be shorter), using up to thread_budget()
/// threads.  fn must write only to chunk-indexed slots.  Exceptions thrown by
/// fn are rethrown on the calling thread.
void for_chunks(std::size_t count, std::size_t chunk,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// Number of chunks for_chunks will use for a given count and chunk size.
inline std::size_t chunk_count(std::size_t count, std::size_t chunk) {
  return count == 0 ? 0 : (count + chunk - 1) / chunk;
}

}  // namespace greenball::par

#endif  // GREENBALL_PARALLEL_HPP_
