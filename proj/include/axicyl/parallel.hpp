/// @file parallel.hpp
/// @brief Minimal fork-join loop capped by AXICYL_THREADS.
#pragma once

#include <functional>

namespace axicyl {

/// Worker cap: AXICYL_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
int thread_budget();

/// Calls body(i) for i in [0, n). Iterations must be independent; results
/// do not depend on the number of workers.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace axicyl
