#include "rtleak/sim.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rtleak {

namespace {

constexpr Tick kNever = std::numeric_limits<Tick>::max();

struct TaskState {
    Tick next_release = kNever;
    bool active = false;
    Tick remaining = 0;
    Tick deadline = 0;
    Tick release_tick = 0;
};

} // namespace

Trace simulate(const TaskSet& ts, Tick horizon, const std::optional<VariationConfig>& var) {
    require_valid(ts);

    const std::size_t n = ts.tasks.size();
    std::vector<TaskState> st(n);
    for (std::size_t i = 0; i < n; ++i)
        st[i].next_release = ts.tasks[i].offset;

    Rng rng(var ? var->seed : 0);

    Trace tr;
    tr.horizon = horizon;
    // Job identity of the trailing slice, for merging contiguous execution
    // of one job across decision points (never across completions).
    std::uint32_t last_task = 0;
    Tick last_release = kNever;

    auto release = [&](std::size_t i, Tick now) {
        const TaskSpec& t = ts.tasks[i];
        if (st[i].active) {
            // d = p and inter-arrival >= p, so the old job's deadline has
            // passed; drop its leftover work.
            tr.misses.push_back({static_cast<std::uint32_t>(i), st[i].deadline});
        }
        Tick cost = t.wcet;
        if (var) cost = sample_execution_time(t.wcet, *var, rng);
        st[i].active = true;
        st[i].remaining = cost;
        st[i].deadline = checked_add(now, t.deadline);
        st[i].release_tick = now;
        tr.releases.push_back({static_cast<std::uint32_t>(i), now, cost});
        Tick gap = t.period;
        if (t.kind == TaskKind::Sporadic && var) gap = sample_inter_arrival(t.period, *var, rng);
        st[i].next_release = checked_add(now, gap);
    };

    Tick now = 0;
    while (now < horizon) {
        for (std::size_t i = 0; i < n; ++i)
            if (st[i].next_release == now) release(i, now);

        Tick next_rel = kNever;
        int run = -1;
        for (std::size_t i = 0; i < n; ++i) {
            next_rel = std::min(next_rel, st[i].next_release);
            if (st[i].active && (run < 0 || ts.tasks[i].priority > ts.tasks[run].priority))
                run = static_cast<int>(i);
        }

        if (run < 0) {
            now = std::min(next_rel, horizon);
            continue;
        }

        Tick until = std::min({next_rel, checked_add(now, st[run].remaining), horizon});
        if (!tr.slices.empty() && last_task == static_cast<std::uint32_t>(run) &&
            last_release == st[run].release_tick && tr.slices.back().span.end == now) {
            tr.slices.back().span.end = until;
        } else {
            tr.slices.push_back({static_cast<std::uint32_t>(run), {now, until}});
            last_task = static_cast<std::uint32_t>(run);
            last_release = st[run].release_tick;
        }

        st[run].remaining -= until - now;
        if (st[run].remaining == 0) {
            st[run].active = false;
            tr.completions.push_back({static_cast<std::uint32_t>(run), until});
            if (until > st[run].deadline)
                tr.misses.push_back({static_cast<std::uint32_t>(run), st[run].deadline});
            last_release = kNever; // next contiguous slice is a new job
        }
        now = until;
    }

    for (std::size_t i = 0; i < n; ++i)
        if (st[i].active && st[i].deadline <= horizon)
            tr.misses.push_back({static_cast<std::uint32_t>(i), st[i].deadline});

    return tr;
}

RtaResult response_time_analysis(const TaskSet& ts) {
    require_valid(ts);
    const std::size_t n = ts.tasks.size();
    RtaResult res;
    res.schedulable = true;
    res.response.assign(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        const TaskSpec& ti = ts.tasks[i];
        Tick r = ti.wcet;
        for (std::size_t iter = 0;; ++iter) {
            if (iter > 1000000)
                throw std::runtime_error("response_time_analysis: iteration cap hit for task '" + ti.id + "'");
            Tick demand = ti.wcet;
            for (std::size_t j = 0; j < n; ++j) {
                const TaskSpec& tj = ts.tasks[j];
                if (tj.priority <= ti.priority) continue;
                Tick jobs = checked_add(r, tj.period - 1) / tj.period; // ceil(r / p_j)
                demand = checked_add(demand, checked_mul(jobs, tj.wcet));
            }
            if (demand == r) break;
            r = demand;
            if (r > ti.deadline) break; // diverged past the deadline
        }
        res.response[i] = r;
        if (r > ti.deadline) res.schedulable = false;
    }
    return res;
}

} // namespace rtleak
