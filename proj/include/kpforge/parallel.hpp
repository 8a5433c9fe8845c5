#pragma once

#include <cstddef>
#include <functional>

namespace kpforge {

/// Worker count: hardware concurrency, or the KPFORGE_THREADS environment
/// variable when it is set to a positive integer (at most 256). The
/// variable may exceed the core count, which is useful for checking that
/// results do not depend on the thread count.
unsigned worker_count();

/// Calls body(begin, end) on contiguous chunks covering [0, count). Chunks
/// run concurrently; exceptions from any chunk are rethrown on the caller.
/// Calls made from inside a chunk run inline on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace kpforge
