#include "rtleak/ladder.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtleak {

std::size_t Ladder::survivor_count() const {
    return static_cast<std::size_t>(std::count(eliminated.begin(), eliminated.end(), 0));
}

Ladder build_ladder(Tick victim_period, Tick start) {
    if (victim_period == 0) throw std::invalid_argument("ladder requires a non-zero victim period");
    Ladder l;
    l.period = victim_period;
    l.start = start;
    l.eliminated.assign(victim_period, 0);
    return l;
}

void mark_intervals(Ladder& ladder, const std::vector<Interval>& intervals) {
    const Tick p = ladder.period;
    for (const Interval& iv : intervals) {
        if (iv.end < iv.start) throw std::invalid_argument("interval with end < start");
        if (iv.start < ladder.start)
            throw std::invalid_argument("interval starts before the ladder origin");
        Tick len = iv.length();
        if (len >= p) {
            std::fill(ladder.eliminated.begin(), ladder.eliminated.end(), 1);
            continue;
        }
        Tick c = ladder.column_of(iv.start);
        for (Tick k = 0; k < len; ++k) {
            ladder.eliminated[c] = 1;
            if (++c == p) c = 0;
        }
    }
}

InferenceResult infer_arrival_column(const Ladder& ladder) {
    const Tick p = ladder.period;
    InferenceResult res;

    std::size_t alive = ladder.survivor_count();
    if (alive == 0) return res;
    if (alive == p) {
        res.candidates.push_back({0, p});
        res.largest_len = p;
        res.delta_hat = 0;
        return res;
    }

    // Collect linear survivor runs, then merge a head run touching column 0
    // with a tail run touching column p-1 into one wrapping run.
    std::vector<ColumnRun> runs;
    Tick c = 0;
    while (c < p) {
        if (ladder.eliminated[c]) {
            ++c;
            continue;
        }
        Tick begin = c;
        while (c < p && !ladder.eliminated[c]) ++c;
        runs.push_back({begin, c - begin});
    }
    if (runs.size() >= 2 && runs.front().start == 0 &&
        runs.back().start + runs.back().length == p) {
        runs.back().length += runs.front().length;
        runs.erase(runs.begin());
    }

    std::sort(runs.begin(), runs.end(),
              [](const ColumnRun& a, const ColumnRun& b) { return a.start < b.start; });
    res.candidates = runs;
    for (const ColumnRun& r : runs) res.largest_len = std::max(res.largest_len, r.length);
    for (const ColumnRun& r : runs) {
        if (r.length == res.largest_len) {
            res.delta_hat = r.start; // runs are start-sorted: first hit is the tie-break
            break;
        }
    }
    return res;
}

Tick infer_initial_offset(Tick delta_hat, Tick start, Tick victim_period) {
    if (victim_period == 0) throw std::invalid_argument("zero victim period");
    return checked_add(start, delta_hat) % victim_period;
}

Tick predict_arrival(Tick a_hat, Tick victim_period, std::uint64_t k) {
    return checked_add(a_hat, checked_mul(victim_period, k));
}

} // namespace rtleak
