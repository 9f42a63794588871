#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rtleak/time_types.hpp"

namespace rtleak {

// Schedule ladder: time folded modulo the victim period into columns
// 0..period-1. Column of tick x is (x - start) mod period; marking an
// observed tick eliminates its column as a possible victim arrival.
struct Ladder {
    Tick period = 0;
    Tick start = 0; // ladder origin == attack start t
    std::vector<std::uint8_t> eliminated;

    Tick column_of(Tick x) const { return (x - start) % period; }
    std::size_t survivor_count() const;
};

// A maximal run of surviving columns, circular: the run may wrap past
// column period-1 into column 0. length <= period.
struct ColumnRun {
    Tick start = 0;
    Tick length = 0;
};

struct InferenceResult {
    // Inferred victim arrival column; empty when every column is eliminated.
    std::optional<Tick> delta_hat;
    // (start + delta_hat) mod period, filled by infer_initial_offset.
    std::optional<Tick> a_hat;
    std::vector<ColumnRun> candidates; // all maximal survivor runs, by start
    Tick largest_len = 0;
};

Ladder build_ladder(Tick victim_period, Tick start);

// Marks the columns covered by each interval. Intervals must start at or
// after the ladder origin; an interval spanning >= period ticks eliminates
// every column. Marking is monotone (columns are never revived).
void mark_intervals(Ladder& ladder, const std::vector<Interval>& intervals);

// Largest surviving circular run wins; ties break to the smallest start
// column. All columns eliminated -> delta_hat empty, no candidates.
InferenceResult infer_arrival_column(const Ladder& ladder);

// Maps an arrival column back to an absolute initial offset in [0, period).
Tick infer_initial_offset(Tick delta_hat, Tick start, Tick victim_period);

// k-th future arrival: a_hat + period * k, overflow-checked.
Tick predict_arrival(Tick a_hat, Tick victim_period, std::uint64_t k);

} // namespace rtleak
