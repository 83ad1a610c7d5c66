#pragma once

#include <functional>

namespace abc {

/// Worker count from ABC_CONTROL_THREADS (integer >= 1); 1 when unset.
/// Throws ConfigurationError for any other value.
int thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index is
/// handled exactly once and callers write only to slot i, so results do not
/// depend on the thread count. The exception from the lowest failing index is rethrown.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace abc
