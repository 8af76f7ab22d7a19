#pragma once

#include <cstddef>
#include <functional>

namespace logifold {

// Worker count: LOGIFOLD_THREADS when set to a positive integer, else the
// hardware concurrency (at least 1).
std::size_t worker_count();

// Splits [0, n) into at most worker_count() contiguous chunks and runs
// body(begin, end, chunk) on each, joining before returning. Chunk
// boundaries depend only on n and the worker count. If chunks throw, the
// exception of the lowest-indexed failing chunk is rethrown.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace logifold
