#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rtleak {

// Discrete scheduler time. All quantities are non-negative tick counts;
// arithmetic that could wrap must go through the checked helpers below.
using Tick = std::uint64_t;

inline Tick checked_add(Tick a, Tick b) {
    Tick r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("tick addition overflows: " + std::to_string(a) + " + " + std::to_string(b));
    return r;
}

inline Tick checked_mul(Tick a, Tick b) {
    Tick r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("tick multiplication overflows: " + std::to_string(a) + " * " + std::to_string(b));
    return r;
}

Tick gcd_pair(Tick a, Tick b);

// Least common multiple with overflow detection (std::lcm wraps silently).
Tick lcm_pair(Tick a, Tick b);

// Half-open time span [start, end). end == start denotes an empty interval.
struct Interval {
    Tick start = 0;
    Tick end = 0;

    Tick length() const { return end - start; }
    bool empty() const { return end <= start; }
    bool contains(Tick t) const { return start <= t && t < end; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

} // namespace rtleak
