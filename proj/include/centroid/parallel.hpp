#ifndef CENTROID_PARALLEL_HPP
#define CENTROID_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace centroid {

// Runs fn(i) for i in [0, count) on up to `threads` workers. Work is pulled
// in fixed-size blocks from an atomic counter; each index is visited exactly
// once, so writing result[i] from fn is race-free. Values must be combined
// afterwards in index order (see pairwise_sum) to stay bit-stable across
// thread counts.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t block = 64;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&]() {
    for (;;) {
      std::size_t lo = next.fetch_add(block);
      if (lo >= count) return;
      std::size_t hi = std::min(count, lo + block);
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int nthreads = std::min<std::size_t>(threads, (count + block - 1) / block);
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace centroid

#endif
