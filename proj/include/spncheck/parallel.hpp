#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace spncheck {

/// Thread count from SPNCHECK_THREADS, or 1 when unset or malformed.
inline unsigned threads_from_env() {
  const char* s = std::getenv("SPNCHECK_THREADS");
  if (s == nullptr) return 1;
  try {
    const long v = std::stol(s);
    return v > 0 ? static_cast<unsigned>(v) : 1;
  } catch (...) {
    return 1;
  }
}

/// Calls fn(i) for i in [0, n) on up to `threads` workers. fn must only write
/// to per-index state; callers merge results in index order afterwards.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace spncheck
