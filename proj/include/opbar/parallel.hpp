#pragma once

#include <cstddef>
#include <functional>

namespace opbar {

/// Worker count from OPBAR_THREADS (default: hardware concurrency, at least 1).
int thread_count();

/// Runs f(0), ..., f(n-1) on up to thread_count() threads. Each call must
/// write only to its own slot so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace opbar
