#pragma once

#include <functional>

namespace fracperim {

// Global worker count for parallel_for. Default 1 (serial); the CLI raises it
// from --threads. Results are deterministic for any count because jobs write
// disjoint slots.
int thread_count();
void set_thread_count(int n);
int hardware_threads();

// Runs fn(0..n-1), possibly concurrently. fn must only touch per-index state.
// The first exception thrown by a job is rethrown after all workers join.
void parallel_for(long n, const std::function<void(long)>& fn);

} // namespace fracperim
