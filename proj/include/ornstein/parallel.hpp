#pragma once

#include <cstddef>
#include <functional>

namespace ornstein {

/// Worker count used by block-parallel loops: an explicit set_thread_count
/// wins, then the ORNSTEIN_THREADS environment variable, then the hardware
/// concurrency. Always at least 1.
int thread_count();
void set_thread_count(int n);

/// Runs fn(block) for block = 0..nblocks-1, statically partitioned over the
/// workers. Each block writes only its own slot, so results are merged by the
/// caller in block order and the outcome is independent of the worker count.
void parallel_blocks(size_t nblocks, const std::function<void(size_t)>& fn);

}  // namespace ornstein
