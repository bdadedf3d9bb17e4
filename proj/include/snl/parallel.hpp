#pragma once

#include <cstddef>
#include <functional>

namespace snl {

/// Worker count: SNL_THREADS if set to a positive integer, else hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() workers. Work is
/// claimed dynamically, so body must not depend on execution order. The first
/// exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace snl
