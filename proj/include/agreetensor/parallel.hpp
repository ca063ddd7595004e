#pragma once

#include <cstddef>
#include <functional>

namespace agreetensor {

/// Worker count: explicit request if nonzero, else AGREETENSOR_THREADS if set and nonzero,
/// else hardware concurrency.
unsigned resolve_threads(unsigned requested = 0);

/// Calls body(index) for index in [0, count) across `threads` workers. Each index is
/// visited exactly once; results must be written to per-index slots by the caller.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace agreetensor
