#pragma once

// Trace invariant checkers shared by unit, property and acceptance tests.
// All return an empty string on success and a diagnostic otherwise, so
// callers can CHECK_MESSAGE / print with context.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rtleak/sim.hpp"
#include "rtleak/task.hpp"

namespace rtleak::testing {

// Per-job view assembled from a trace: release/cost plus executed slices.
struct JobView {
    std::uint32_t task = 0;
    Tick release = 0;
    Tick cost = 0;
    Tick executed = 0;
    Tick first_start = 0;
    Tick completion = 0;  // 0 = none recorded
    Tick window_end = 0;  // next release of the task, or the horizon
};

inline std::vector<JobView> job_views(const Trace& tr) {
    std::vector<JobView> jobs;
    std::map<std::uint32_t, std::vector<std::size_t>> by_task; // job indices per task
    for (const Release& r : tr.releases) {
        by_task[r.task].push_back(jobs.size());
        jobs.push_back({r.task, r.tick, r.cost, 0, 0, 0, tr.horizon});
    }
    for (const auto& [task, idx] : by_task)
        for (std::size_t k = 0; k + 1 < idx.size(); ++k)
            jobs[idx[k]].window_end = jobs[idx[k + 1]].release;
    // Slices and completions attach to the latest job released at or before
    // their tick (jobs of one task are time-ordered).
    auto owner = [&](std::uint32_t task, Tick t) -> JobView* {
        auto it = by_task.find(task);
        if (it == by_task.end()) return nullptr;
        JobView* best = nullptr;
        for (std::size_t j : it->second) {
            if (jobs[j].release <= t) best = &jobs[j];
            else break;
        }
        return best;
    };
    for (const Slice& s : tr.slices) {
        JobView* j = owner(s.task, s.span.start);
        if (!j) continue;
        if (j->executed == 0) j->first_start = s.span.start;
        j->executed += s.span.length();
    }
    for (const Completion& c : tr.completions) {
        JobView* j = owner(c.task, c.tick - 1);
        if (j) j->completion = c.tick;
    }
    return jobs;
}

inline std::string check_no_overlap(const Trace& tr) {
    for (std::size_t i = 0; i + 1 < tr.slices.size(); ++i) {
        const Slice& a = tr.slices[i];
        const Slice& b = tr.slices[i + 1];
        if (a.span.end > b.span.start || a.span.start >= a.span.end) {
            std::ostringstream os;
            os << "slice overlap or disorder at index " << i << ": [" << a.span.start << ","
               << a.span.end << ") then [" << b.span.start << "," << b.span.end << ")";
            return os.str();
        }
    }
    return {};
}

// Preemptive fixed priority: while a job of i runs, no higher-priority task
// may have a released-but-unfinished job.
inline std::string check_priority_order(const Trace& tr, const TaskSet& ts) {
    std::vector<JobView> jobs = job_views(tr);
    for (const Slice& s : tr.slices) {
        for (const JobView& j : jobs) {
            if (ts.tasks[j.task].priority <= ts.tasks[s.task].priority) continue;
            // An unfinished job stops pending at its drop point (the task's
            // next release) after a deadline miss.
            Tick pend_end = j.completion ? j.completion : j.window_end;
            Tick lo = std::max(s.span.start, j.release);
            Tick hi = std::min(s.span.end, pend_end);
            if (lo < hi) {
                std::ostringstream os;
                os << "task " << ts.tasks[s.task].id << " ran [" << s.span.start << ","
                   << s.span.end << ") while higher-priority " << ts.tasks[j.task].id
                   << " (released " << j.release << ", done "
                   << (j.completion ? std::to_string(j.completion) : "never") << ") was pending";
                return os.str();
            }
        }
    }
    return {};
}

// Completed jobs execute exactly their sampled cost; incomplete jobs
// (running at the horizon, or dropped after a miss) never exceed it.
inline std::string check_conservation(const Trace& tr) {
    for (const JobView& j : job_views(tr)) {
        if (j.completion ? j.executed != j.cost : j.executed > j.cost) {
            std::ostringstream os;
            os << "task index " << j.task << " job released " << j.release << " executed "
               << j.executed << " of cost " << j.cost
               << (j.completion ? " but completed" : " without completing");
            return os.str();
        }
    }
    return {};
}

inline std::string check_all_invariants(const Trace& tr, const TaskSet& ts) {
    std::string r = check_no_overlap(tr);
    if (r.empty()) r = check_priority_order(tr, ts);
    if (r.empty()) r = check_conservation(tr);
    return r;
}

inline bool traces_equal(const Trace& a, const Trace& b) {
    if (a.horizon != b.horizon) return false;
    if (a.slices.size() != b.slices.size() || a.releases.size() != b.releases.size() ||
        a.completions.size() != b.completions.size() || a.misses.size() != b.misses.size())
        return false;
    for (std::size_t i = 0; i < a.slices.size(); ++i)
        if (a.slices[i].task != b.slices[i].task || a.slices[i].span != b.slices[i].span)
            return false;
    for (std::size_t i = 0; i < a.releases.size(); ++i)
        if (a.releases[i].task != b.releases[i].task || a.releases[i].tick != b.releases[i].tick ||
            a.releases[i].cost != b.releases[i].cost)
            return false;
    for (std::size_t i = 0; i < a.completions.size(); ++i)
        if (a.completions[i].task != b.completions[i].task ||
            a.completions[i].tick != b.completions[i].tick)
            return false;
    for (std::size_t i = 0; i < a.misses.size(); ++i)
        if (a.misses[i].task != b.misses[i].task || a.misses[i].deadline != b.misses[i].deadline)
            return false;
    return true;
}

// The running example used across the test suite: four tasks, observer
// priority 2, victim priority 3 with period 8 and offset 1.
inline TaskSet example_taskset() {
    TaskSet ts;
    ts.tasks = {
        {"tau1", TaskKind::Periodic, 15, 15, 1, 3, 1},
        {"tau_o", TaskKind::Periodic, 10, 10, 2, 0, 2},
        {"tau_v", TaskKind::Periodic, 8, 8, 2, 1, 3},
        {"tau4", TaskKind::Periodic, 6, 6, 1, 4, 4},
    };
    ts.observer_id = "tau_o";
    ts.victim_id = "tau_v";
    return ts;
}

} // namespace rtleak::testing
