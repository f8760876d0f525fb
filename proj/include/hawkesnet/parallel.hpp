#pragma once

#include <cstddef>
#include <functional>

namespace hawkesnet {

// Number of workers used when a caller passes 0.
unsigned default_workers();

// Runs body(i) for i in [0, n) on up to `workers` threads (0 = default_workers()).
// Each index runs exactly once. If any body throws, the exception from the
// lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace hawkesnet
