#pragma once

#include <cstddef>
#include <functional>

namespace matk {

/** Set the worker count for internal parallel loops (0 = all cores). */
void set_num_threads(unsigned n);
unsigned num_threads();

/**
 * Run body(i) for i in [0, n) on the configured workers.  Each index is
 * processed exactly once; callers write results into per-index slots so
 * the outcome is independent of the worker count.  The first exception
 * thrown by any body is rethrown after all workers stop.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace matk
