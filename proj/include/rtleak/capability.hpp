#pragma once

#include <cstdint>

#include "rtleak/task.hpp"
#include "rtleak/time_types.hpp"

namespace rtleak {

// Coverage ratio C = e_o / gcd(p_o, p_v): fraction of ladder columns the
// observer can eliminate per gcd-cycle. C >= 1 means every non-victim
// column is reachable.
double coverage_ratio(Tick e_o, Tick p_o, Tick p_v);

// Measurement budget: gcd(p_o, p_v) when coverage >= 1 (smallest budget
// that still reaches every column), otherwise all of e_o.
Tick choose_lambda(Tick e_o, Tick p_o, Tick p_v);

// Attack window of `multiple` observation hyperperiods, overflow-checked.
Tick attack_window(Tick p_o, Tick p_v, std::uint64_t multiple);

struct CapabilityReport {
    double coverage = 0.0;
    Tick lambda = 0;
    Tick lcm = 0;
    bool full_coverage = false; // coverage >= 1
};

CapabilityReport analyze_capability(const TaskSet& ts);

} // namespace rtleak
