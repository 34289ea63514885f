#pragma once

#include <cstddef>
#include <functional>

namespace tcon {

/// Worker count from TCON_THREADS, defaulting to the hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, n) on static contiguous chunks. Each index is
/// handled by exactly one thread, so writing to slot i of a preallocated
/// output keeps results independent of the thread count. The first
/// exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tcon
