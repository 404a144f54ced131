#pragma once

#include <cstddef>
#include <functional>

namespace nlifo {

// Number of worker threads: hardware concurrency capped by NLIFO_THREADS.
unsigned thread_budget();

// Runs fn over [0, n) split into contiguous chunks, one per worker.
// Chunks are disjoint, so writers to disjoint output slices need no locking.
// Assembly order is deterministic: the caller owns the output layout.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace nlifo
