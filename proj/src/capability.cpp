#include "rtleak/capability.hpp"

#include <stdexcept>

namespace rtleak {

double coverage_ratio(Tick e_o, Tick p_o, Tick p_v) {
    if (p_o == 0 || p_v == 0) throw std::invalid_argument("coverage_ratio: zero period");
    return static_cast<double>(e_o) / static_cast<double>(gcd_pair(p_o, p_v));
}

Tick choose_lambda(Tick e_o, Tick p_o, Tick p_v) {
    Tick g = gcd_pair(p_o, p_v);
    if (g == 0) throw std::invalid_argument("choose_lambda: zero period");
    return e_o >= g ? g : e_o;
}

Tick attack_window(Tick p_o, Tick p_v, std::uint64_t multiple) {
    return checked_mul(lcm_pair(p_o, p_v), multiple);
}

CapabilityReport analyze_capability(const TaskSet& ts) {
    require_valid(ts);
    const TaskSpec& o = ts.observer();
    const TaskSpec& v = ts.victim();
    CapabilityReport rep;
    rep.coverage = coverage_ratio(o.wcet, o.period, v.period);
    rep.lambda = choose_lambda(o.wcet, o.period, v.period);
    rep.lcm = lcm_pair(o.period, v.period);
    rep.full_coverage = rep.coverage >= 1.0;
    return rep;
}

} // namespace rtleak
