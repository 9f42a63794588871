#pragma once

#include <vector>

#include "rtleak/sim.hpp"
#include "rtleak/task.hpp"
#include "rtleak/time_types.hpp"

namespace rtleak {

// An interval the observer attributes to its own execution (self-measured
// by timestamp polling, so at tick resolution it equals real CPU time).
using ObservedInterval = Interval;

struct ObserverConfig {
    Tick lambda = 0;       // measurement budget per observer job, <= wcet
    Tick wcet = 0;         // the observer's e_o
    Tick attack_start = 0; // window is [attack_start, attack_start + attack_duration)
    Tick attack_duration = 0;
};

// Rebuilds the observer's self-measured execution intervals from a trace.
// Per observer job the first min(lambda, received CPU) execution ticks are
// measured; a preemption closes the current interval and the remaining
// budget carries over to the job's next slice. The budget resets at every
// release. Intervals are truncated (not dropped) at the window edges.
std::vector<ObservedInterval> reconstruct_intervals(const Trace& tr, const TaskSet& ts,
                                                    const ObserverConfig& cfg);

} // namespace rtleak
