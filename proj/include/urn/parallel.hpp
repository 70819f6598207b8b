#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace urn {

/// Resolves a requested worker count; 0 means one per hardware thread.
inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(i) for i in [0, trials) on up to `workers` threads and returns the
/// results in trial order. Each trial must derive its randomness from i alone,
/// which makes the output independent of the worker count. The first exception
/// thrown by any trial is rethrown after all workers stop.
template <class F>
auto run_trials(std::uint64_t trials, unsigned workers, F&& fn)
    -> std::vector<std::invoke_result_t<F&, std::uint64_t>> {
  using Result = std::invoke_result_t<F&, std::uint64_t>;
  std::vector<Result> results(trials);
  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), trials));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < trials; ++i) results[i] = fn(i);
    return results;
  }

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::uint64_t i = next++; i < trials && !failed; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace urn
