// parallel.hpp: Index-parallel loop with a thread cap from RATEAUDIT_THREADS

#pragma once

#include <cstddef>
#include <functional>

namespace rateaudit {

// RATEAUDIT_THREADS: unset or 0 means hardware concurrency.
std::size_t thread_count();

// Runs body(i) for i in [0, n). Each index is visited exactly once; callers store results by
// index so aggregation is independent of scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rateaudit
