#include "rtleak/observer.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtleak {

std::vector<ObservedInterval> reconstruct_intervals(const Trace& tr, const TaskSet& ts,
                                                    const ObserverConfig& cfg) {
    if (cfg.lambda > cfg.wcet)
        throw std::invalid_argument("observer budget lambda exceeds observer wcet");

    const int obs = ts.observer_index();
    if (obs < 0) throw std::invalid_argument("taskset has no observer task");

    const Tick win_lo = cfg.attack_start;
    const Tick win_hi = checked_add(cfg.attack_start, cfg.attack_duration);

    // Observer release ticks delimit jobs: under d = p (and sporadic gaps
    // >= p) every slice between consecutive releases belongs to the earlier
    // job.
    std::vector<Tick> rel;
    for (const Release& r : tr.releases)
        if (static_cast<int>(r.task) == obs) rel.push_back(r.tick);
    // simulate() emits releases in time order already; keep this robust for
    // imported traces.
    std::sort(rel.begin(), rel.end());

    std::vector<ObservedInterval> out;
    if (cfg.lambda == 0) return out;

    std::size_t job = 0;
    Tick budget = 0;
    for (const Slice& s : tr.slices) {
        if (static_cast<int>(s.task) != obs) continue;
        while (job < rel.size() && rel[job] <= s.span.start) {
            budget = cfg.lambda; // new job: budget resets
            ++job;
        }
        if (budget == 0) continue;
        Tick take = std::min(budget, s.span.length());
        budget -= take;
        Interval iv{s.span.start, s.span.start + take};
        // clip to the attack window
        iv.start = std::max(iv.start, win_lo);
        iv.end = std::min(iv.end, win_hi);
        if (!iv.empty()) out.push_back(iv);
    }
    return out;
}

} // namespace rtleak
