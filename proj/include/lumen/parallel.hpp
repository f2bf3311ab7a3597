#pragma once

#include <cstddef>
#include <functional>

namespace lumen {

// Worker count for data-parallel loops. Reads LUMEN_THREADS when set to a
// positive integer, otherwise std::thread::hardware_concurrency().
unsigned worker_count();

// Calls body(i) for i in [0, n), split into contiguous chunks across
// worker_count() threads. Each index is visited exactly once; callers write
// only to slots owned by i, so the result does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lumen
