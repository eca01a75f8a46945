#pragma once

#include <cstddef>
#include <functional>

namespace datakit {

/// Logical core count, at least 1.
unsigned default_worker_count() noexcept;

/// Runs `task(i)` for every i in [0, count) on up to `workers` threads.
/// Items are claimed dynamically from a shared counter, so idle workers pick
/// up remaining work. The task must handle its own errors; an exception
/// escaping a task is rethrown after all workers have stopped.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task);

}  // namespace datakit
