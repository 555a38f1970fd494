#pragma once

#include <cstddef>
#include <functional>

namespace hmsa {

/// Worker count from HMSA_THREADS (0 or unset = hardware concurrency).
unsigned kernel_threads();

/// Runs body(i) for i in [0, count). Iterations must write disjoint outputs;
/// results are therefore independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hmsa
