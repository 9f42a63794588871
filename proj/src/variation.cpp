#include "rtleak/variation.hpp"

#include <cmath>
#include <stdexcept>

namespace rtleak {

static void check_config(const VariationConfig& var) {
    if (!(var.exec_mean_fraction > 0.0 && var.exec_mean_fraction <= 1.0))
        throw std::invalid_argument("exec_mean_fraction must be in (0,1]");
    if (!(var.exec_upper_quantile > 0.5 && var.exec_upper_quantile < 1.0))
        throw std::invalid_argument("exec_upper_quantile must be in (0.5,1)");
    if (!(var.sporadic_mean_fraction >= 1.0))
        throw std::invalid_argument("sporadic_mean_fraction must be >= 1");
}

double exec_sigma(Tick wcet, const VariationConfig& var) {
    check_config(var);
    double mu = var.exec_mean_fraction * static_cast<double>(wcet);
    if (var.exec_mean_fraction == 1.0) return 0.0;
    double z = inv_normal_cdf(var.exec_upper_quantile);
    return (static_cast<double>(wcet) - mu) / z;
}

double sample_execution_time_raw(Tick wcet, const VariationConfig& var, Rng& rng) {
    if (wcet == 0) throw std::invalid_argument("sample_execution_time: zero wcet");
    double mu = var.exec_mean_fraction * static_cast<double>(wcet);
    return rng.normal(mu, exec_sigma(wcet, var));
}

Tick sample_execution_time(Tick wcet, const VariationConfig& var, Rng& rng) {
    double x = sample_execution_time_raw(wcet, var, rng);
    // llround is independent of the fenv rounding mode.
    long long r = std::llround(x);
    if (r < 1) return 1;
    Tick t = static_cast<Tick>(r);
    return t > wcet ? wcet : t;
}

Tick sample_inter_arrival(Tick period, const VariationConfig& var, Rng& rng) {
    if (period == 0) throw std::invalid_argument("sample_inter_arrival: zero period");
    check_config(var);
    double mean = var.sporadic_mean_fraction * static_cast<double>(period);
    for (;;) {
        std::uint64_t k = rng.poisson(mean);
        if (k >= period) return k;
    }
}

} // namespace rtleak
