#pragma once

#include <functional>

namespace alns {

/// Runs fn(i) for i in [0, n) on up to `threads` workers with static
/// chunking. Results must be written to disjoint slots; any reduction the
/// caller does afterwards should be in a fixed order so the outcome does not
/// depend on the thread count.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace alns
