#pragma once

#include <cstddef>
#include <functional>

namespace se2n {

// Worker count: SE2N_THREADS if set (>= 1), else hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, n) over contiguous chunks. Each index is visited
// exactly once; callers write disjoint outputs so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace se2n
