#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace streamzero {

/// Worker count: STREAMZERO_THREADS if set and positive, else the hardware count.
inline unsigned default_threads() {
  if (const char* env = std::getenv("STREAMZERO_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(block_begin, block_end, block_index) over [0, n) split into
/// `threads` contiguous blocks and returns the per-block results in block order.
template <class Fn>
auto parallel_blocks(std::size_t n, unsigned threads, Fn fn) {
  using R = decltype(fn(std::size_t{}, std::size_t{}, std::size_t{}));
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<R> out(threads);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t b = n * t / threads, e = n * (t + 1) / threads;
    auto job = [&, b, e, t] {
      try {
        out[t] = fn(b, e, t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    };
    if (threads == 1) job();
    else pool.emplace_back(job);
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace streamzero
