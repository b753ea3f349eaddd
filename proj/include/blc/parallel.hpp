#ifndef BLC_PARALLEL_HPP
#define BLC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace blc {

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). The first exception thrown is rethrown after all workers
/// finish. Callers write results into per-index slots, so the outcome does not
/// depend on scheduling.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace blc

#endif  // BLC_PARALLEL_HPP
