#pragma once

#include <cstddef>
#include <functional>

namespace cfma {

// Upper bound on worker threads used by parallel_for. 0 restores the
// default (hardware concurrency).
void set_max_workers(unsigned n) noexcept;
unsigned max_workers() noexcept;

// Runs body(i) for i in [0, n). Nested calls run serially on the calling
// worker. If any body throws, the exception from the lowest index is
// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cfma
