#include "greenball/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace greenball::par {

namespace {

int clamp_budget(int b) { return std::max(1, std::min(b, 64)); }

int initial_budget() {
  if (const char* env = std::getenv("GREENBALL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return clamp_budget(static_cast<int>(v));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return clamp_budget(hw == 0 ? 1 : static_cast<int>(hw));
}

std::atomic<int>& budget_storage() {
  static std::atomic<int> budget{initial_budget()};
  return budget;
}

}  // namespace

int thread_budget() { return budget_storage().load(std::memory_order_relaxed); }

void set_thread_budget(int budget) {
  budget_storage().store(clamp_budget(budget), std::memory_order_relaxed);
}

void for_chunks(std::size_t count, std::size_t chunk,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  if (chunk == 0) chunk = 1;
  const std::size_t nchunks = chunk_count(count, chunk);
  const int budget = thread_budget();
  const std::size_t nthreads =
      std::min<std::size_t>(static_cast<std::size_t>(budget), nchunks);

  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * chunk;
    const std::size_t end = std::min(begin + chunk, count);
    fn(c, begin, end);
  };

  if (nthreads <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) run_chunk(c);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= nchunks) return;
      try {
        run_chunk(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(nthreads - 1);
  for (std::size_t t = 1; t < nthreads; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace greenball::par
