#include "rtleak/taskgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "rtleak/capability.hpp"
#include "rtleak/rng.hpp"
#include "rtleak/sim.hpp"

namespace rtleak {

const char* to_string(VictimMode m) {
    return m == VictimMode::LowestAboveObserver ? "lowest-above-observer" : "highest-priority";
}

static void check_config(const GenConfig& cfg) {
    if (cfg.util_group < 0 || cfg.util_group > 9)
        throw std::invalid_argument("util_group must be in 0..9");
    if (cfg.n_tasks < 2) throw std::invalid_argument("need at least observer and victim");
    if (cfg.sporadic_fraction < 0.0 || cfg.sporadic_fraction > 1.0)
        throw std::invalid_argument("sporadic_fraction must be in [0,1]");
    if (cfg.period_min == 0 || cfg.period_max < cfg.period_min)
        throw std::invalid_argument("bad period range");
    if (cfg.period_max - cfg.period_min + 1 < static_cast<Tick>(cfg.n_tasks))
        throw std::invalid_argument("period range too small for distinct periods");
    if (cfg.coverage_group && cfg.coverage_group->first > cfg.coverage_group->second)
        throw std::invalid_argument("bad coverage group");
}

TaskSet generate_taskset(const GenConfig& cfg) {
    check_config(cfg);
    Rng rng(cfg.seed);

    const int n = cfg.n_tasks;
    const double u_lo = 0.001 + 0.1 * cfg.util_group;
    const double u_hi = 0.100 + 0.1 * cfg.util_group;
    const Tick span = cfg.period_max - cfg.period_min + 1;

    std::map<std::string, std::uint64_t> fails;

    for (std::uint64_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        // Distinct periods, uniform over the range.
        std::set<Tick> pset;
        while (static_cast<int>(pset.size()) < n)
            pset.insert(cfg.period_min + rng.uniform_below(span));
        // Descending period = ascending rate-monotonic priority; slot 0 is
        // the observer (largest period, lowest priority).
        std::vector<Tick> periods(pset.rbegin(), pset.rend());

        const int obs = 0;
        const int vic = cfg.victim_mode == VictimMode::LowestAboveObserver ? 1 : n - 1;

        // UUniFast split of the total utilization.
        double total = u_lo + rng.uniform01() * (u_hi - u_lo);
        std::vector<double> util(n);
        double rest = total;
        for (int i = 0; i < n - 1; ++i) {
            double next = rest * std::pow(rng.uniform01(), 1.0 / static_cast<double>(n - 1 - i));
            util[i] = rest - next;
            rest = next;
        }
        util[n - 1] = rest;

        std::vector<Tick> wcet(n);
        for (int i = 0; i < n; ++i) {
            long long e = std::llround(util[i] * static_cast<double>(periods[i]));
            wcet[i] = e < 1 ? 1 : static_cast<Tick>(e);
        }

        double cov = coverage_ratio(wcet[obs], periods[obs], periods[vic]);
        if (cfg.require_coverage_ge_1 && cov < 1.0) {
            ++fails["coverage < 1"];
            continue;
        }
        if (cfg.coverage_group &&
            (cov < cfg.coverage_group->first || cov > cfg.coverage_group->second)) {
            ++fails["coverage outside group"];
            continue;
        }

        TaskSet ts;
        ts.tasks.resize(n);
        for (int i = 0; i < n; ++i) {
            TaskSpec& t = ts.tasks[i];
            char buf[16];
            std::snprintf(buf, sizeof buf, "t%02d", i + 1);
            t.id = buf;
            t.kind = TaskKind::Periodic;
            t.period = periods[i];
            t.deadline = periods[i];
            t.wcet = wcet[i];
            t.offset = rng.uniform_below(periods[i]);
            t.priority = i + 1;
        }
        ts.observer_id = ts.tasks[obs].id;
        ts.victim_id = ts.tasks[vic].id;

        // Sporadic kind assignment; observer and victim stay periodic.
        int n_periodic = static_cast<int>(
            std::ceil((1.0 - cfg.sporadic_fraction) * static_cast<double>(n)));
        int n_sporadic = std::min(n - n_periodic, n - 2);
        if (n_sporadic > 0) {
            std::vector<int> pool;
            for (int i = 0; i < n; ++i)
                if (i != obs && i != vic) pool.push_back(i);
            // Fisher-Yates with the taskset's own stream.
            for (std::size_t i = pool.size(); i > 1; --i)
                std::swap(pool[i - 1], pool[rng.uniform_below(i)]);
            for (int k = 0; k < n_sporadic; ++k)
                ts.tasks[pool[k]].kind = TaskKind::Sporadic;
        }

        if (!response_time_analysis(ts).schedulable) {
            ++fails["rta unschedulable"];
            continue;
        }
        return ts;
    }

    std::string dominant = "none";
    std::uint64_t worst = 0;
    for (const auto& [name, count] : fails)
        if (count > worst) {
            worst = count;
            dominant = name;
        }
    throw GenerationError("taskset generation exhausted " + std::to_string(cfg.max_attempts) +
                          " attempts; dominant failed constraint: " + dominant + " (" +
                          std::to_string(worst) + " rejections)");
}

} // namespace rtleak
