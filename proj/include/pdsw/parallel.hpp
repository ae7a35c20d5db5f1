#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace pdsw {

/// Default worker count: $PDSW_WORKERS if set and positive, else 1.
std::size_t default_workers();

/// Runs body(k) for k in [0, count) on up to `workers` threads, handing out
/// contiguous chunks. Each k must write only its own outputs, which makes the
/// result independent of scheduling. If any body throws, the exception of the
/// smallest failing k is rethrown after all threads join.
template <class Body>
void parallel_for(std::size_t count, std::size_t workers, Body&& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  const std::size_t chunk = std::max<std::size_t>(1, count / (workers * 8));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::size_t error_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= count) break;
      const std::size_t end = std::min(count, begin + chunk);
      for (std::size_t k = begin; k < end; ++k) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (k < error_index) {
            error_index = k;
            error = std::current_exception();
          }
          failed.store(true, std::memory_order_relaxed);
          break;
        }
      }
    }
  };
  std::vector<std::jthread> threads;
  threads.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) threads.emplace_back(worker);
  worker();
  threads.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace pdsw
