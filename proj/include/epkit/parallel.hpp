#pragma once

#include <cstddef>
#include <functional>

namespace epkit {

/// Thread budget: GENINV_THREADS when set (clamped to >= 1), otherwise
/// hardware concurrency.
int thread_budget();

/// Static-partition parallel loop over [0, count). fn must be safe to call
/// concurrently for distinct indices; callers keep determinism by writing
/// results into per-index slots. threads <= 0 means thread_budget().
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace epkit
