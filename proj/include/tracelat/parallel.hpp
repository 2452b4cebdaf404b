#ifndef TRACELAT_PARALLEL_HPP
#define TRACELAT_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace tracelat {

/// Worker count from TRACE_LATTICE_THREADS (0 = serial); defaults to the
/// hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("TRACE_LATTICE_THREADS")) {
    try {
      const long v = std::stol(env);
      return v <= 0 ? 0u : static_cast<unsigned>(v);
    } catch (const std::exception&) {
      return 0;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Applies fn(i) for i in [0, n) and returns the results in index order,
/// independent of completion order. The first exception is rethrown.
template <typename R, typename Fn>
std::vector<R> parallel_map(std::size_t n, Fn fn, unsigned workers = worker_count()) {
  std::vector<R> out(n);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(workers, n);
  for (std::size_t k = 0; k < count; ++k) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace tracelat

#endif  // TRACELAT_PARALLEL_HPP
