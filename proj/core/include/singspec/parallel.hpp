#pragma once

#include <functional>

namespace singspec {

// Sets the worker thread count for batched coefficient computation.  n >= 1
// pins the count; n == 0 restores the default (SINGSPEC_THREADS environment
// variable if set, otherwise the hardware concurrency).  Results are
// bit-identical for every thread count.
void set_threads(int n);
int thread_count();

namespace detail {

// Runs body(i) for i in [begin, end) on up to thread_count() workers.  Work
// items are claimed through an atomic counter; the caller must make writes
// disjoint per index.  The first exception thrown by a body is rethrown.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace detail

}  // namespace singspec
