#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tlab {

/// Worker count: TRANSVERSAL_LAB_THREADS when set to a positive integer,
/// otherwise the hardware concurrency.
inline unsigned thread_count() {
  if (const char* env = std::getenv("TRANSVERSAL_LAB_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [begin, end) and returns the results in index
/// order. Work is striped over thread_count() threads; fn must be pure.
template <class Fn>
auto parallel_map(std::size_t begin, std::size_t end, Fn fn) {
  using R = decltype(fn(begin));
  std::vector<R> out(end > begin ? end - begin : 0);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), out.size()));
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) out[i - begin] = fn(i);
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = begin + w; i < end; i += workers) out[i - begin] = fn(i);
    });
  }
  return out;
}

}  // namespace tlab
