#pragma once

#include <cstddef>
#include <vector>

#include "rtleak/time_types.hpp"

namespace rtleak {

// Outcome of one inference run against ground truth.
struct RunOutcome {
    bool success = false;    // exact offset match
    double precision = 0.0;  // precision ratio in [0, 1]
    Tick epsilon = 0;        // |a_hat - a_v| (convention p_v/2 when no candidate)
    double duration_units = 0.0; // attack duration in lcm(p_o, p_v) units
};

inline bool offset_success(Tick a_hat, Tick a_v) { return a_hat == a_v; }

// Circular-distance precision: with eps = |a_hat - a_v|,
//   I = 1 - (p_v - eps) / (p_v / 2)   if eps > p_v / 2
//   I = 1 - eps / (p_v / 2)           otherwise
double precision_from_epsilon(Tick eps, Tick p_v);
double precision_ratio(Tick a_hat, Tick a_v, Tick p_v);

struct AggregateStats {
    double success_rate = 0.0;
    double precision_mean = 0.0;
    double precision_sd = 0.0; // population SD
    double precision_min = 0.0;
    double precision_median = 0.0;
    double precision_max = 0.0;
    std::size_t n = 0;
};

// Throws std::invalid_argument on an empty outcome list.
AggregateStats aggregate(const std::vector<RunOutcome>& outcomes);

} // namespace rtleak
