#pragma once

#include <cstddef>
#include <functional>

namespace pseudoroll {

/// Worker count: hardware concurrency, capped by the PSEUDOROLL_THREADS
/// environment variable when set (values < 1 mean 1).
int thread_count();

/// Run fn(begin, end) over [0, n) split into contiguous chunks, one per
/// worker.  Falls back to a single inline call when only one worker is
/// available.  fn must be safe to run concurrently on disjoint ranges.
void parallel_for_chunks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace pseudoroll
