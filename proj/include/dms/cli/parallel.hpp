#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dms::cli {

/// Worker count: DMS_THREADS if set and positive, else the hardware count.
unsigned worker_count();

/// Runs body(k) for k in [0, n) on up to worker_count() threads. Work is
/// interleaved by index; the exception of the lowest failing index is rethrown.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t first) {
    for (std::size_t k = first; k < n; k += workers) {
      try {
        body(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace dms::cli
