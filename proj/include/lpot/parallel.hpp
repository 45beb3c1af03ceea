#pragma once

#include <functional>

namespace lpot {

/// Worker cap: LPOT_WORKERS when set, hardware concurrency otherwise.
int worker_count();

/// Runs fn(0..n-1) on up to worker_count() threads. Results must be
/// written to preallocated slots so output order is deterministic.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace lpot
