#pragma once

#include <cstddef>
#include <functional>

namespace hagkit {

// requested > 0 wins; otherwise HAGKIT_WORKERS, otherwise 1.
// Throws DataError if HAGKIT_WORKERS is set but not a positive integer.
int resolve_workers(int requested = 0);

// Runs fn(i) for i in [0, n) on up to `workers` threads with static
// contiguous chunks. Each index is written by exactly one call, so results
// gathered by index do not depend on the worker count. The first exception
// thrown by any worker is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace hagkit
