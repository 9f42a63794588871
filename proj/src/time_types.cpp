#include "rtleak/time_types.hpp"

#include <numeric>

namespace rtleak {

Tick gcd_pair(Tick a, Tick b) {
    return std::gcd(a, b);
}

Tick lcm_pair(Tick a, Tick b) {
    if (a == 0 || b == 0) throw std::invalid_argument("lcm of zero period");
    return checked_mul(a / std::gcd(a, b), b);
}

} // namespace rtleak
