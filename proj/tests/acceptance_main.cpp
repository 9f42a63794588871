// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failed criteria. Heavy statistical criteria use all cores; results are
// worker-count independent (criterion 9 checks exactly that).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "rtleak/attack.hpp"
#include "rtleak/capability.hpp"
#include "rtleak/experiment.hpp"
#include "rtleak/ladder.hpp"
#include "rtleak/metrics.hpp"
#include "rtleak/observer.hpp"
#include "rtleak/rng.hpp"
#include "rtleak/sim.hpp"
#include "rtleak/taskgen.hpp"
#include "rtleak/variation.hpp"
#include "support/checks.hpp"

using namespace rtleak;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

int worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 16u));
}

const int kTaskCounts[] = {5, 7, 9, 11, 13, 15};

const AggregateStats* find_row(const ExperimentResult& res, const std::string& group) {
    for (const ResultRow& r : res.rows)
        if (r.group == group) return &r.stats;
    return nullptr;
}

// ---- criterion 1: worked-example golden run -------------------------------

Outcome c1_worked_example() {
    AttackConfig cfg;
    cfg.duration = 50;
    cfg.lambda_override = 1;
    AttackResult r = run_attack(rtleak::testing::example_taskset(), cfg);

    const std::vector<ObservedInterval> want_iv = {{0, 1}, {12, 13}, {20, 21}, {30, 31}, {43, 44}};
    const std::vector<std::pair<Tick, Tick>> want_runs = {{1, 2}, {5, 1}, {7, 1}};

    if (r.observed != want_iv) return {false, "observed intervals differ from the worked example"};
    if (r.inference.candidates.size() != want_runs.size())
        return {false, fmt("expected 3 candidate runs, got %zu", r.inference.candidates.size())};
    for (std::size_t i = 0; i < want_runs.size(); ++i)
        if (r.inference.candidates[i].start != want_runs[i].first ||
            r.inference.candidates[i].length != want_runs[i].second)
            return {false, fmt("candidate %zu is [%llu,+%llu), expected [%llu,+%llu)", i,
                               (unsigned long long)r.inference.candidates[i].start,
                               (unsigned long long)r.inference.candidates[i].length,
                               (unsigned long long)want_runs[i].first,
                               (unsigned long long)want_runs[i].second)};
    if (!r.inference.delta_hat || *r.inference.delta_hat != 1)
        return {false, "delta_hat != 1"};
    if (!r.inference.a_hat || *r.inference.a_hat != 1) return {false, "a_hat != 1"};
    if (!r.outcome.success || r.outcome.precision != 1.0)
        return {false, "success/precision mismatch"};
    return {true, "intervals, candidates, delta_hat=1, a_hat=1, precision=1.0 all exact"};
}

// ---- criterion 2: duration sweep ------------------------------------------

Outcome c2_duration_sweep() {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::DurationSweep;
    spec.seed = 0x5EED0002;
    spec.tasksets_per_cell = 5; // 120 grid cells -> 600 tasksets
    spec.jobs = worker_count();
    ExperimentResult res = run_experiment(spec);

    const AggregateStats* m5 = find_row(res, "m=5");
    if (!m5) return {false, "missing m=5 row"};
    if (m5->n < 500) return {false, fmt("only %zu tasksets at m=5, need >= 500", m5->n)};

    std::string detail = fmt("n=%zu, success@5lcm=%.4f, precision@5lcm=%.4f", m5->n,
                             m5->success_rate, m5->precision_mean);
    if (m5->success_rate < 0.92)
        return {false, detail + " (success rate below 0.92)"};
    if (m5->precision_mean < 0.97)
        return {false, detail + " (mean precision below 0.97)"};

    for (const Series& s : res.series)
        if (s.first == "success_vs_duration")
            for (std::size_t i = 1; i < s.second.size(); ++i)
                if (s.second[i].second < s.second[i - 1].second - 0.02)
                    return {false, fmt("success curve drops at m=%g: %.4f -> %.4f",
                                       s.second[i].first, s.second[i - 1].second,
                                       s.second[i].second)};
    return {true, detail + ", curve non-decreasing within 2pp"};
}

// ---- criterion 3: coverage group [0.401, 0.5] -----------------------------

Outcome c3_coverage_group() {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::CoverageGroups;
    spec.seed = 0x5EED0003;
    spec.tasksets_per_cell = 360;
    spec.cells = {"cov=g4"};
    spec.jobs = worker_count();
    ExperimentResult res = run_experiment(spec);

    const AggregateStats* st = find_row(res, "cov=g4");
    if (!st) return {false, "missing cov=g4 row"};
    std::string detail =
        fmt("n=%zu, success=%.4f (target 0.599 +/- 0.10), precision=%.4f (target 0.819 +/- 0.08)",
            st->n, st->success_rate, st->precision_mean);
    if (st->n < 300) return {false, detail + " (need >= 300 tasksets)"};
    if (std::abs(st->success_rate - 0.599) > 0.10) return {false, detail};
    if (std::abs(st->precision_mean - 0.819) > 0.08) return {false, detail};
    return {true, detail};
}

// ---- criterion 4: sporadic share insensitivity ----------------------------

Outcome c4_sporadic_mix() {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::SporadicMix;
    spec.seed = 0x5EED0004;
    spec.tasksets_per_cell = 400;
    spec.cells = {"sporadic=0", "sporadic=100"};
    spec.jobs = worker_count();
    ExperimentResult res = run_experiment(spec);

    const AggregateStats* all_per = find_row(res, "sporadic=0");
    const AggregateStats* all_spo = find_row(res, "sporadic=100");
    if (!all_per || !all_spo) return {false, "missing sporadic rows"};
    if (all_per->n < 300 || all_spo->n < 300)
        return {false, fmt("need >= 300 per cell, got %zu and %zu", all_per->n, all_spo->n)};

    double diff = std::abs(all_per->precision_mean - all_spo->precision_mean);
    std::string detail = fmt("precision 0%%=%.4f vs 100%%=%.4f, |diff|=%.4f (bar 0.02)",
                             all_per->precision_mean, all_spo->precision_mean, diff);
    return {diff < 0.02, detail};
}

// ---- criterion 5: no observation inside the victim's columns --------------

Outcome c5_band_disjoint() {
    // The protected band [delta_v, delta_v + bcet) assumes the victim is
    // live for the whole window, so the attack starts one victim period in.
    const int runs = 1000;
    int used = 0;
    long long ticks_checked = 0;

    for (int run = 0; run < runs; ++run) {
        GenConfig gen;
        gen.util_group = run % 10;
        gen.n_tasks = kTaskCounts[(run / 10) % 6];
        gen.victim_mode =
            (run / 60) % 2 ? VictimMode::HighestPriority : VictimMode::LowestAboveObserver;
        gen.sporadic_fraction = 0.5;
        gen.seed = 0x5EED0005 + static_cast<std::uint64_t>(run);
        TaskSet ts;
        try {
            ts = generate_taskset(gen);
        } catch (const GenerationError&) {
            continue;
        }
        ++used;

        const TaskSpec& o = ts.observer();
        const TaskSpec& v = ts.victim();
        const Tick t = v.period;
        const Tick dur = 2 * lcm_pair(o.period, v.period);

        VariationConfig var;
        var.seed = 0xAB5005 + static_cast<std::uint64_t>(run);
        Trace tr = simulate(ts, checked_add(t, dur), var);
        if (!tr.misses.empty()) return {false, fmt("run %d: schedulable taskset missed", run)};

        Tick lambda = choose_lambda(o.wcet, o.period, v.period);
        std::vector<ObservedInterval> ivs =
            reconstruct_intervals(tr, ts, {lambda, o.wcet, t, dur});

        const std::uint32_t vic = static_cast<std::uint32_t>(ts.victim_index());
        Tick bcet = v.wcet;
        for (const Release& r : tr.releases)
            if (r.task == vic) bcet = std::min(bcet, r.cost);

        const Tick delta = v.offset; // (a_v - t) mod p_v with t = p_v
        for (const Interval& iv : ivs)
            for (Tick x = iv.start; x < iv.end; ++x) {
                ++ticks_checked;
                Tick col = (x - t) % v.period;
                if ((col + v.period - delta) % v.period < bcet)
                    return {false,
                            fmt("run %d: observed tick %llu hits protected column %llu "
                                "(delta=%llu bcet=%llu p_v=%llu)",
                                run, (unsigned long long)x, (unsigned long long)col,
                                (unsigned long long)delta, (unsigned long long)bcet,
                                (unsigned long long)v.period)};
            }
    }
    if (used < 950) return {false, fmt("only %d/1000 runs generated", used)};
    return {true, fmt("%d runs, %lld observed ticks, zero inside the protected band", used,
                      ticks_checked)};
}

// ---- criterion 6: full coverage pins the survivor set ---------------------

Outcome c6_exact_survivors() {
    Rng rng(0x5EED0006);
    int done = 0;
    long long attempts = 0;

    while (done < 200) {
        if (++attempts > 200000) return {false, "tuple sampling budget exhausted"};
        Tick p_o = 4 + rng.uniform_below(37);
        Tick p_v = 4 + rng.uniform_below(37);
        if (p_o == p_v) continue;
        Tick g = gcd_pair(p_o, p_v);
        if (g >= p_o) continue; // e_o would have to equal p_o
        Tick e_v = 1 + rng.uniform_below(std::max<Tick>(1, p_v / 2));
        Tick e_o = g + rng.uniform_below(p_o - g);
        Tick a_v = rng.uniform_below(p_v);

        TaskSet ts;
        ts.tasks = {
            {"obs", TaskKind::Periodic, p_o, p_o, e_o, 0, 1},
            {"vic", TaskKind::Periodic, p_v, p_v, e_v, a_v, 2},
        };
        ts.observer_id = "obs";
        ts.victim_id = "vic";
        if (!response_time_analysis(ts).schedulable) continue;

        Tick mult = (e_o + g - 1) / g; // ceil(coverage)
        AttackConfig cfg;
        // window start p_v > a_v keeps the victim live for the whole window;
        // before its first release a wrapped column band is observable and
        // the survivor set would not be exact. delta_v stays equal to a_v.
        cfg.attack_start = p_v;
        cfg.duration = checked_mul(lcm_pair(p_o, p_v), mult);
        AttackResult r = run_attack(ts, cfg);

        Ladder lad = build_ladder(p_v, p_v);
        mark_intervals(lad, r.observed);
        for (Tick c = 0; c < p_v; ++c) {
            bool victim_col = (c + p_v - a_v) % p_v < e_v;
            bool surviving = lad.eliminated[c] == 0;
            if (victim_col != surviving)
                return {false,
                        fmt("tuple (p_o=%llu p_v=%llu e_o=%llu e_v=%llu a_v=%llu): column %llu "
                            "%s but %s",
                            (unsigned long long)p_o, (unsigned long long)p_v,
                            (unsigned long long)e_o, (unsigned long long)e_v,
                            (unsigned long long)a_v, (unsigned long long)c,
                            victim_col ? "belongs to the victim" : "is reachable",
                            surviving ? "survived" : "was eliminated")};
        }
        if (!r.outcome.success || !r.inference.a_hat || *r.inference.a_hat != a_v)
            return {false, fmt("tuple (p_o=%llu p_v=%llu e_o=%llu e_v=%llu a_v=%llu): "
                               "inference missed the offset",
                               (unsigned long long)p_o, (unsigned long long)p_v,
                               (unsigned long long)e_o, (unsigned long long)e_v,
                               (unsigned long long)a_v)};
        ++done;
    }
    return {true, fmt("200 tuples (from %lld draws): survivor set exact, offset recovered", attempts)};
}

// ---- criterion 7: analysis vs synchronous simulation ----------------------

Outcome c7_rta_agreement() {
    Rng rng(0x5EED0007);
    int schedulable = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform_below(4));
        std::set<Tick> pset;
        while (static_cast<int>(pset.size()) < n) pset.insert(2 + rng.uniform_below(11));
        std::vector<Tick> periods(pset.rbegin(), pset.rend());

        TaskSet ts;
        for (int i = 0; i < n; ++i) {
            char id[16];
            std::snprintf(id, sizeof id, "t%02d", i + 1);
            ts.tasks.push_back({id, TaskKind::Periodic, periods[i], periods[i],
                                1 + rng.uniform_below(periods[i]), 0, i + 1});
        }
        ts.observer_id = ts.tasks.front().id;
        ts.victim_id = ts.tasks.back().id;

        Tick hyper = 1;
        for (const TaskSpec& t : ts.tasks) hyper = lcm_pair(hyper, t.period);

        RtaResult rta = response_time_analysis(ts);
        Trace tr = simulate(ts, hyper, std::nullopt);
        std::string inv = rtleak::testing::check_all_invariants(tr, ts);
        if (!inv.empty()) return {false, fmt("trial %d: invariant broken: %s", trial, inv.c_str())};
        if (rta.schedulable != tr.misses.empty())
            return {false, fmt("trial %d: analysis says %s but the hyperperiod trace has %zu misses",
                               trial, rta.schedulable ? "schedulable" : "unschedulable",
                               tr.misses.size())};
        if (rta.schedulable) {
            ++schedulable;
            std::map<std::uint32_t, Tick> first_done;
            for (const Completion& c : tr.completions)
                if (!first_done.count(c.task)) first_done[c.task] = c.tick;
            for (std::size_t i = 0; i < ts.tasks.size(); ++i)
                if (first_done[static_cast<std::uint32_t>(i)] != rta.response[i])
                    return {false, fmt("trial %d: %s first completion %llu != fixed point %llu",
                                       trial, ts.tasks[i].id.c_str(),
                                       (unsigned long long)first_done[static_cast<std::uint32_t>(i)],
                                       (unsigned long long)rta.response[i])};
        }
    }
    return {true, fmt("200 tasksets, verdicts and response times exact (%d schedulable)",
                      schedulable)};
}

// ---- criterion 8: variation-model statistics ------------------------------

Outcome c8_variation_stats() {
    VariationConfig var;
    var.seed = 0x5EED0008;
    Rng rng(var.seed);

    const int n = 100000;
    int band_tight = 0, band_wcet = 0;
    for (int i = 0; i < n; ++i) {
        double x = sample_execution_time_raw(10, var, rng);
        if (x >= 7.2 && x <= 8.8) ++band_tight;
        if (x >= 7.0 && x <= 9.0) ++band_wcet;
    }
    double frac_tight = static_cast<double>(band_tight) / n;
    double frac_wcet = static_cast<double>(band_wcet) / n;

    for (Tick p : {Tick(10), Tick(250)}) {
        for (int i = 0; i < 10000; ++i)
            if (sample_inter_arrival(p, var, rng) < p)
                return {false, fmt("inter-arrival below the period %llu", (unsigned long long)p)};
    }

    std::string detail =
        fmt("mass within +/-10%% of mean = %.4f (bar 0.94; +/-10%%*wcet band holds %.4f); "
            "inter-arrivals all >= p",
            frac_tight, frac_wcet);
    return {frac_tight >= 0.94, detail};
}

// ---- criterion 9: worker-count independence --------------------------------

Outcome c9_determinism() {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::DurationSweep;
    spec.seed = 0x5EED0009;
    spec.tasksets_per_cell = 2;
    spec.duration_multiples = {1, 3};
    spec.cells = {"x2/"};

    spec.jobs = 1;
    std::string serial = results_csv(run_experiment(spec));
    spec.jobs = 4;
    std::string parallel = results_csv(run_experiment(spec));
    spec.jobs = 1;
    std::string again = results_csv(run_experiment(spec));

    if (serial != again) return {false, "same seed, same worker count: CSVs differ"};
    if (serial != parallel) return {false, "1 worker vs 4 workers: CSVs differ"};
    return {true, fmt("%zu CSV bytes identical across reruns and worker counts", serial.size())};
}

} // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "worked-example golden run", c1_worked_example},
        {2, "duration sweep (success/precision at 5 lcm, monotone curve)", c2_duration_sweep},
        {3, "coverage group [0.401,0.5] reproduction", c3_coverage_group},
        {4, "sporadic-mix insensitivity", c4_sporadic_mix},
        {5, "observer never measures inside the victim band", c5_band_disjoint},
        {6, "full coverage pins the survivor set exactly", c6_exact_survivors},
        {7, "response-time analysis agrees with simulation", c7_rta_agreement},
        {8, "variation-model statistics", c8_variation_stats},
        {9, "worker-count independent results", c9_determinism},
    };

    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, fmt("unhandled exception: %s", e.what())};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  criterion %d: %s: %s (%.2f s)\n", out.ok ? "PASS" : "FAIL", c.id,
                    c.name, out.detail.c_str(), secs);
        std::fflush(stdout);
        if (!out.ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
