#pragma once

#include <functional>

namespace addiviol {

// Worker cap: min(ADDIVIOL_THREADS, hardware concurrency), at least 1.
int worker_thread_count();

// Runs fn(0..n-1) across worker threads. Results must be written to
// per-index slots; the caller reduces after return, so the outcome does
// not depend on scheduling order.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace addiviol
