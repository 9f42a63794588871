#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rtleak/ladder.hpp"
#include "rtleak/metrics.hpp"
#include "rtleak/observer.hpp"
#include "rtleak/sim.hpp"
#include "rtleak/task.hpp"
#include "rtleak/variation.hpp"

namespace rtleak {

struct AttackConfig {
    Tick attack_start = 0;
    // Window length: explicit ticks win over a multiple of lcm(p_o, p_v).
    std::optional<Tick> duration;
    std::uint64_t window_multiple = 10;
    std::optional<Tick> lambda_override; // default: choose_lambda
    std::optional<VariationConfig> variation; // nullopt = deterministic
};

struct AttackResult {
    RunOutcome outcome;
    InferenceResult inference;
    Tick lambda = 0;
    Tick lcm = 0;
    Tick duration = 0;
    double coverage = 0.0;
    std::vector<ObservedInterval> observed;
};

// Full pipeline: simulate -> reconstruct observer intervals -> ladder ->
// arrival-column inference -> score against the victim's true offset.
// A run with zero observed intervals or an all-eliminated ladder counts as
// failed with epsilon = p_v / 2 (precision 0).
AttackResult run_attack(const TaskSet& ts, const AttackConfig& cfg);

// One simulation at the largest multiple, scored at every requested
// multiple of lcm(p_o, p_v) by truncating the observed intervals; identical
// to separate runs because the schedule prefix does not depend on the
// horizon. Results are ordered like `multiples`.
std::vector<AttackResult> run_attack_multiples(const TaskSet& ts, const AttackConfig& cfg,
                                               const std::vector<std::uint64_t>& multiples);

} // namespace rtleak
