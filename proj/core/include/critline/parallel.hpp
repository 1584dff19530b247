#pragma once

#include <cstddef>
#include <functional>

namespace critline {

// Number of worker threads: CRITLINE_WORKERS if set, else the value passed to
// set_worker_count, else the hardware concurrency.
std::size_t worker_count();
void set_worker_count(std::size_t n);

// Runs fn(i) for i in [0, n) across the workers. Callers write results into
// per-index slots, so outputs never depend on scheduling. The exception from
// the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace critline
