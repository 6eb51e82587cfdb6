#pragma once

#include <cstddef>
#include <functional>

namespace oqt {

// Worker count: OQT_THREADS when set (clamped to >= 1), else hardware
// concurrency.
int worker_count();

// Runs fn(i) for i in [0, n) across workers. fn must only write state owned
// by index i; combine results serially afterwards so output never depends on
// the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace oqt
