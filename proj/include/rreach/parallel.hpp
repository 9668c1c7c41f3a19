#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rreach {

inline unsigned default_thread_count() {
  const unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1u : h;
}

// Runs fn(begin, end) over a static contiguous partition of [0, count).
// Rethrows the first worker exception. Callers must make the result
// independent of the partition (disjoint writes or associative merges).
template <class Fn>
inline void parallel_chunks(std::size_t count, unsigned threads, Fn&& fn) {
  if (count == 0) return;
  std::size_t workers = threads == 0 ? 1 : threads;
  if (workers > count) workers = count;
  if (workers == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, &errors, w, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  try {
    fn(std::size_t{0}, std::min(count, chunk));
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace rreach
