#pragma once

#include <functional>

namespace isor {

// Worker count: ISOR_NUM_THREADS if set and positive, else hardware concurrency.
int thread_count();

// Runs body(0) ... body(n-1), split into contiguous blocks across thread_count() threads.
// Each index must write only its own output slots. The first exception thrown by any
// block is rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace isor
