#pragma once

#include "netshift/types.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace netshift {

namespace detail {
inline std::atomic<Index> g_thread_count{1};
inline thread_local bool g_in_parallel = false;  // nested loops run sequentially
}

// Process-wide worker count for the loops below. Defaults to 1 (fully
// sequential); the CLI raises it from --threads / NETSHIFT_THREADS.
inline Index thread_count() { return detail::g_thread_count.load(std::memory_order_relaxed); }

inline void set_thread_count(Index n) {
  detail::g_thread_count.store(std::max<Index>(1, n), std::memory_order_relaxed);
}

// Runs body(i) for i in [begin, end) across thread_count() workers. Each
// index must write only its own output slot, which makes the result
// independent of scheduling. The first exception wins and is rethrown after
// all workers drain.
template <typename F>
void parallel_for(Index begin, Index end, F&& body) {
  const Index len = end - begin;
  if (len <= 0) return;
  const Index workers = std::min<Index>(thread_count(), len);
  if (workers <= 1 || detail::g_in_parallel) {
    for (Index i = begin; i < end; ++i) body(i);
    return;
  }

  std::atomic<Index> next{begin};
  std::atomic<bool> failed{false};
  std::exception_ptr err;
  std::mutex err_mutex;

  auto worker = [&]() {
    detail::g_in_parallel = true;
    try {
      while (!failed.load(std::memory_order_relaxed)) {
        const Index i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= end) return;
        body(i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> guard(err_mutex);
      if (!err) err = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (Index t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace netshift
