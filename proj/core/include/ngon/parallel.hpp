#pragma once

#include <cstddef>
#include <functional>

namespace ngon {

// Number of worker threads. Honors NGON_THREADS when set to a positive
// integer, otherwise std::thread::hardware_concurrency().
unsigned worker_count();

// Runs body(i) for i in [0, count). Iterations are distributed over
// worker_count() threads; nested calls from inside a worker run serially.
// The first exception thrown by any iteration is rethrown on the caller.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body);

}  // namespace ngon
