#pragma once

#include <cstdint>
#include <random>

namespace rtleak {

// Standard normal inverse CDF (Acklam's rational approximation, relative
// error below 1.2e-9). Valid for p in (0, 1).
double inv_normal_cdf(double p);

// splitmix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix_seed(std::uint64_t x);

// Deterministic sampling front end. mt19937_64 is bit-exact per the C++
// standard; the distribution transforms are implemented here because the
// std distributions are implementation-defined and would break trace
// reproducibility across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(mix_seed(seed)) {}

    std::uint64_t u64() { return eng_(); }

    // Uniform on (0, 1), never returns 0 or 1.
    double uniform01();

    // Uniform integer in [0, n), unbiased. n must be > 0.
    std::uint64_t uniform_below(std::uint64_t n);

    // Normal via inverse-CDF transform; one engine draw per sample.
    double normal(double mu, double sigma);

    // Poisson; PTRD rejection for mean >= 10, sequential inversion below.
    std::uint64_t poisson(double mean);

private:
    std::mt19937_64 eng_;
};

} // namespace rtleak
