#pragma once

#include <cstddef>
#include <functional>

namespace tubal {

/// Worker count: hardware concurrency, capped by TUBALPCA_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Iterations must be independent.
/// Exceptions thrown by any iteration are rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tubal
