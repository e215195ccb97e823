#pragma once

#include <functional>

namespace opjensen {

// Number of worker threads: TOOLKIT_THREADS when set to a positive integer,
// otherwise the hardware concurrency (at least 1).
int thread_budget();

// Runs body(0..count-1) across the thread budget in contiguous blocks.  Every
// iteration must be independent and self-seeding, so the result is identical
// for any thread count.  The first exception thrown by any iteration is
// rethrown in the caller.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace opjensen
