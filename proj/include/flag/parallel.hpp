#pragma once

#include <cstddef>
#include <functional>

namespace flag {

/// Number of worker threads used by the transforms. Defaults to 1; throws
/// std::invalid_argument for n < 1.
void set_num_threads(int n);
int num_threads();

/// Runs body(i) for i in [0, n). Iterations are split into contiguous chunks,
/// one per thread; each iteration must write to disjoint memory.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace flag
