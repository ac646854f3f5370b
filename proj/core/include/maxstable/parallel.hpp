#pragma once

#include <cstddef>
#include <functional>

namespace maxstable {

/// Worker count used when a caller passes 0: the MAXSTABLE_THREADS environment
/// variable if set, otherwise std::thread::hardware_concurrency().
unsigned default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers with static
/// contiguous chunking. Each index runs exactly once; callers write results
/// into per-index slots so reductions stay order-fixed. The first exception
/// thrown by any worker is rethrown after all workers joined.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace maxstable
