#pragma once

#include <cstddef>
#include <functional>

namespace thinob {

/// Number of worker threads used by the data-parallel loops. Read once from
/// THINOB_WORKERS (default: hardware concurrency, at most 8). Affects speed
/// only; every reduction is done afterwards in a fixed order.
int worker_count();
void set_worker_count(int n);

/// Calls body(i) for every i in [0, n), split in contiguous chunks across
/// workers. Rethrows the exception of the lowest failing index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace thinob
