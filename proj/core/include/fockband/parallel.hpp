#pragma once

#include <functional>

namespace fockband {

// Worker cap: min(hardware concurrency, FOCKBAND_THREADS when set).
int worker_cap();

// Runs fn(i) for i in [0, count) across worker threads.  Each index must be
// independent; results are deterministic regardless of schedule.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace fockband
