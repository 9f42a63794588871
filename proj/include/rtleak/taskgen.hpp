#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "rtleak/task.hpp"
#include "rtleak/time_types.hpp"

namespace rtleak {

enum class VictimMode {
    LowestAboveObserver, // victim is the task right above the observer (priority 2)
    HighestPriority      // victim is the top-priority task
};

const char* to_string(VictimMode m);

// Synthetic taskset recipe: n distinct periods uniform in
// [period_min, period_max]; rate-monotonic priorities (smaller period =
// higher priority); the observer is the lowest-priority task; total
// utilization uniform in group x's range [0.001 + 0.1x, 0.1 + 0.1x], split
// by UUniFast; e_i = round(u_i * p_i) clamped to >= 1; offsets uniform in
// [0, p_i). ceil((1 - sporadic_fraction) * n) tasks stay periodic; sporadic
// kinds are assigned among the tasks other than observer and victim, which
// are always periodic. Tasksets are rejection-sampled until response-time
// analysis passes and the coverage constraint holds (e_i are never adjusted
// post hoc).
struct GenConfig {
    int util_group = 4; // x in 0..9
    int n_tasks = 5;
    double sporadic_fraction = 0.0;
    VictimMode victim_mode = VictimMode::LowestAboveObserver;
    bool require_coverage_ge_1 = true;
    std::optional<std::pair<double, double>> coverage_group; // inclusive bounds
    Tick period_min = 100;
    Tick period_max = 1000;
    std::uint64_t seed = 0;
    std::uint64_t max_attempts = 500000;
};

struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

TaskSet generate_taskset(const GenConfig& cfg);

} // namespace rtleak
