#pragma once

#include <functional>

namespace inflap::runtime {

/// Parallelism cap: INFLAP_THREADS when set to a positive integer, otherwise
/// the hardware concurrency. Read once per process.
int thread_cap();

/// Runs fn(0..n-1) on up to thread_cap() threads. Falls back to a plain loop
/// when the cap is 1 or n is small. fn must be safe to call concurrently.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace inflap::runtime
