#pragma once

#include <cstddef>
#include <functional>

namespace vexlab {

// Worker count: VEXLAB_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, count). Iterations must be independent; results
// are expected to be written to per-index slots so the outcome does not
// depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace vexlab
