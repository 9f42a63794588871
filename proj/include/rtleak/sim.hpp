#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rtleak/task.hpp"
#include "rtleak/time_types.hpp"
#include "rtleak/variation.hpp"

namespace rtleak {

// One maximal stretch of uninterrupted execution of a single job.
// `task` indexes TaskSet::tasks.
struct Slice {
    std::uint32_t task = 0;
    Interval span;
};

// `cost` is the job's sampled execution demand; kept on the release record
// so trace invariants (conservation) are checkable from the trace alone.
struct Release {
    std::uint32_t task = 0;
    Tick tick = 0;
    Tick cost = 0;
};

struct Completion {
    std::uint32_t task = 0;
    Tick tick = 0;
};

// A job that was still incomplete at its absolute deadline. Simulation
// continues afterwards; if the next job of the task arrives first, the late
// job's leftover work is discarded (best-effort trace from that point on).
struct DeadlineMiss {
    std::uint32_t task = 0;
    Tick deadline = 0;
};

struct Trace {
    Tick horizon = 0;
    std::vector<Slice> slices;
    std::vector<Release> releases;
    std::vector<Completion> completions;
    std::vector<DeadlineMiss> misses;
};

// Discrete-time fixed-priority preemptive simulation over [0, horizon):
// at every tick, pending releases are applied (in task order, which also
// fixes the RNG draw order), then the highest-priority ready job runs for
// one tick. The implementation advances between decision points in blocks;
// the produced trace is identical to literal 1-tick stepping.
// var == nullopt is the deterministic mode: every job costs exactly wcet
// and sporadic tasks release exactly every period.
Trace simulate(const TaskSet& ts, Tick horizon, const std::optional<VariationConfig>& var);

struct RtaResult {
    bool schedulable = false;
    // Worst-case response per task (same order as TaskSet::tasks); for a
    // task whose fixed point exceeds its deadline the value is the first
    // iterate that crossed it.
    std::vector<Tick> response;
};

// Exact worst-case response-time analysis for this model:
//   R_i = e_i + sum_{j in hp(i)} ceil(R_i / p_j) * e_j
// iterated to the least fixed point; schedulable iff R_i <= d_i for all i.
RtaResult response_time_analysis(const TaskSet& ts);

} // namespace rtleak
