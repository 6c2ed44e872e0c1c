#ifndef LOOPFORM_PARALLEL_HPP
#define LOOPFORM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace loopform {

/// Worker count: LOOPFORM_THREADS when set and positive, otherwise the
/// hardware concurrency (0 in the variable also means auto).
unsigned thread_count();

/// Splits [0, n) into contiguous chunks and runs body(begin, end) on each,
/// one chunk per worker. The first exception thrown by any chunk is
/// rethrown after all workers join. Each index is visited exactly once, so
/// results written per index are independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace loopform

#endif  // LOOPFORM_PARALLEL_HPP
