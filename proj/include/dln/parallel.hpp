#ifndef DLN_PARALLEL_HPP
#define DLN_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace dln::parallel {

// Static block partition of [0, n) across workers. Each index is processed
// exactly once; results must be written to caller-owned per-index slots so
// the reduction order stays fixed regardless of thread count.
template <class Fn>
void for_each_index(long n, int threads, Fn fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n < 2) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  const long block = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    const long lo = t * block;
    const long hi = std::min(n, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, t] {
      try {
        for (long i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace dln::parallel

#endif  // DLN_PARALLEL_HPP
