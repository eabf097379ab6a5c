#ifndef HYPERVOLT_PARALLEL_HPP
#define HYPERVOLT_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <functional>

namespace hypervolt {

/// Worker count: HYPERVOLT_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Run body(i) for i in [0, n) on up to worker_count() threads.  Each index
/// writes only its own output slot, so results do not depend on scheduling.
/// If any call throws, the exception from the lowest failing index is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hypervolt

#endif  // HYPERVOLT_PARALLEL_HPP
