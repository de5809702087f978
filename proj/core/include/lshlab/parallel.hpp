#pragma once

#include <cstddef>
#include <functional>

namespace lshlab {

/// Worker count: LSHLAB_THREADS if set and positive, else hardware concurrency.
std::size_t thread_budget();

/// Runs body(chunk) for chunk in [0, chunks) across up to thread_budget()
/// threads. Callers write per-chunk results into preallocated slots and
/// reduce them in chunk order, which keeps results schedule-independent.
void parallel_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body);

}  // namespace lshlab
