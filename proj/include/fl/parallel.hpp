#pragma once

#include <functional>

namespace fl {

// Worker count used by the assembly routines; 0 means hardware concurrency.
void set_num_threads(int n);
int num_threads();

// Calls fn(i) for i in [0,n). Each index runs exactly once, so writes to disjoint
// rows give the same result for any thread count. The first exception is rethrown.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace fl
