#pragma once

#include <cstdint>

#include "rtleak/rng.hpp"
#include "rtleak/time_types.hpp"

namespace rtleak {

// Execution-time and inter-arrival variation model. Per-job costs are drawn
// from normal(mu = exec_mean_fraction * wcet, sigma) with sigma solved so
// that P(X <= wcet) = exec_upper_quantile, then rounded to the nearest tick
// and clamped to [1, wcet]. Sporadic inter-arrivals are Poisson with mean
// sporadic_mean_fraction * period, redrawn until >= period.
struct VariationConfig {
    double exec_mean_fraction = 0.80;
    double exec_upper_quantile = 0.9999;
    double sporadic_mean_fraction = 1.20;
    std::uint64_t seed = 0;
};

// sigma of the per-job cost distribution; 0 when exec_mean_fraction == 1.
double exec_sigma(Tick wcet, const VariationConfig& var);

// Pre-rounding draw, exposed for distribution tests.
double sample_execution_time_raw(Tick wcet, const VariationConfig& var, Rng& rng);

Tick sample_execution_time(Tick wcet, const VariationConfig& var, Rng& rng);

Tick sample_inter_arrival(Tick period, const VariationConfig& var, Rng& rng);

} // namespace rtleak
