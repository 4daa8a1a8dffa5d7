#ifndef OUFREQ_PARALLEL_HPP
#define OUFREQ_PARALLEL_HPP

#include <cstdlib>
#include <functional>

namespace oufreq {

/// Worker bound: OUFREQ_THREADS if set, else hardware concurrency capped at 8.
int worker_count();

/// Index-parallel map over [0, count).  Each index writes only its own slot,
/// so results are deterministic regardless of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn);

} // namespace oufreq

#endif
