#pragma once

#include <cstddef>
#include <functional>

namespace addlab {

// Worker count: ADDLAB_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

// Calls fn(i) for every i in [0, n) on up to worker_count() threads. Callers
// write results into per-index slots and reduce them in index order, so the
// outcome never depends on scheduling. The first exception is rethrown.
// Loops started from inside a worker run serially on that worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned workers);

}  // namespace addlab
