#include "rtleak/attack.hpp"

#include <algorithm>
#include <stdexcept>

#include "rtleak/capability.hpp"

namespace rtleak {

namespace {

// Shared scoring step once the observed intervals for a window are known.
AttackResult score_window(const TaskSet& ts, Tick attack_start, Tick duration, Tick lambda,
                          Tick lcm, double coverage, std::vector<ObservedInterval> observed) {
    const TaskSpec& v = ts.victim();

    AttackResult res;
    res.lambda = lambda;
    res.lcm = lcm;
    res.duration = duration;
    res.coverage = coverage;
    res.observed = std::move(observed);
    res.outcome.duration_units = static_cast<double>(duration) / static_cast<double>(lcm);

    Ladder ladder = build_ladder(v.period, attack_start);
    mark_intervals(ladder, res.observed);
    res.inference = infer_arrival_column(ladder);

    if (res.observed.empty()) {
        // Starved observer: nothing was measured, so the all-survivor
        // ladder carries no information. Counted as a failed run.
        res.inference.delta_hat.reset();
        res.inference.a_hat.reset();
    }

    if (res.inference.delta_hat) {
        Tick a_hat = infer_initial_offset(*res.inference.delta_hat, attack_start, v.period);
        res.inference.a_hat = a_hat;
        res.outcome.success = offset_success(a_hat, v.offset);
        res.outcome.epsilon = a_hat > v.offset ? a_hat - v.offset : v.offset - a_hat;
        res.outcome.precision = precision_ratio(a_hat, v.offset, v.period);
    } else {
        // No-candidate convention: worst case, eps = p_v / 2, precision 0.
        res.outcome.success = false;
        res.outcome.epsilon = v.period / 2;
        res.outcome.precision = 0.0;
    }
    return res;
}

} // namespace

std::vector<AttackResult> run_attack_multiples(const TaskSet& ts, const AttackConfig& cfg,
                                               const std::vector<std::uint64_t>& multiples) {
    require_valid(ts);
    if (multiples.empty()) throw std::invalid_argument("run_attack_multiples: no multiples");

    const TaskSpec& o = ts.observer();
    const TaskSpec& v = ts.victim();
    const Tick lcm = lcm_pair(o.period, v.period);
    const double coverage = coverage_ratio(o.wcet, o.period, v.period);
    const Tick lambda = cfg.lambda_override ? *cfg.lambda_override
                                            : choose_lambda(o.wcet, o.period, v.period);
    if (lambda > o.wcet)
        throw std::invalid_argument("lambda override exceeds observer wcet");

    std::uint64_t max_mult = *std::max_element(multiples.begin(), multiples.end());
    Tick max_duration = cfg.duration ? *cfg.duration : checked_mul(lcm, max_mult);
    Tick horizon = checked_add(cfg.attack_start, max_duration);

    Trace tr = simulate(ts, horizon, cfg.variation);
    if (!tr.misses.empty())
        throw std::runtime_error("deadline miss during attack simulation; taskset was expected schedulable");

    ObserverConfig ocfg{lambda, o.wcet, cfg.attack_start, max_duration};
    std::vector<ObservedInterval> all = reconstruct_intervals(tr, ts, ocfg);

    std::vector<AttackResult> out;
    out.reserve(multiples.size());
    for (std::uint64_t m : multiples) {
        Tick dur = cfg.duration ? *cfg.duration : checked_mul(lcm, m);
        Tick hi = checked_add(cfg.attack_start, dur);
        std::vector<ObservedInterval> cut;
        for (const ObservedInterval& iv : all) {
            if (iv.start >= hi) break;
            cut.push_back({iv.start, std::min(iv.end, hi)});
        }
        out.push_back(score_window(ts, cfg.attack_start, dur, lambda, lcm, coverage,
                                   std::move(cut)));
    }
    return out;
}

AttackResult run_attack(const TaskSet& ts, const AttackConfig& cfg) {
    std::vector<std::uint64_t> one{cfg.window_multiple};
    return run_attack_multiples(ts, cfg, one).front();
}

} // namespace rtleak
