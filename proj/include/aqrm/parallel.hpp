// parallel.hpp: minimal worker pool for independent index ranges.

#pragma once

#include <cstddef>
#include <functional>

namespace aqrm {

/// Worker count from AQRM_WORKERS, else the available hardware parallelism.
std::size_t default_workers();

/// Calls fn(i) for i in [0, count) on up to `workers` threads. Each index is
/// visited exactly once; results must be written to per-index slots. The
/// first exception thrown by fn is rethrown after all workers finish.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

} // namespace aqrm
