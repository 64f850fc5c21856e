#include "thinob/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace thinob {

namespace {

int default_workers() {
  if (const char* env = std::getenv("THINOB_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw == 0 ? 1u : hw, 1u, 8u));
}

std::atomic<int>& workers() {
  static std::atomic<int> n{default_workers()};
  return n;
}

}  // namespace

int worker_count() { return workers().load(std::memory_order_relaxed); }

void set_worker_count(int n) { workers().store(std::max(1, n), std::memory_order_relaxed); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  if (nw <= 1 || n < 16) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(nw);
  std::vector<std::size_t> failed_at(nw, n);
  {
    std::vector<std::jthread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
      const std::size_t lo = n * w / nw;
      const std::size_t hi = n * (w + 1) / nw;
      pool.emplace_back([&, w, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) {
          try {
            body(i);
          } catch (...) {
            errors[w] = std::current_exception();
            failed_at[w] = i;
            return;
          }
        }
      });
    }
  }
  std::size_t first = n;
  std::exception_ptr err;
  for (std::size_t w = 0; w < nw; ++w) {
    if (errors[w] && failed_at[w] < first) {
      first = failed_at[w];
      err = errors[w];
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace thinob
