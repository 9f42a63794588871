#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rtleak/metrics.hpp"
#include "rtleak/taskgen.hpp"
#include "rtleak/time_types.hpp"

namespace rtleak {

enum class ExperimentKind {
    DurationSweep,  // success/precision vs attack duration in lcm units
    TasksUtilGrid,  // precision vs (n, utilization group) at full duration
    VictimPriority, // both victim placements, grouped by n and by util
    SporadicMix,    // sporadic task share 0..100%
    CoverageGroups  // partial-coverage deciles, lambda = e_o
};

const char* to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(const std::string& name);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::DurationSweep;
    std::uint64_t seed = 0;
    int tasksets_per_cell = 5;
    // Empty = kind default (1..10 for the duration sweep, {10} otherwise).
    std::vector<std::uint64_t> duration_multiples;
    std::optional<Tick> lambda_override;
    bool deterministic = false; // disable the variation model
    // Cell name filters (substring match); empty keeps every cell.
    std::vector<std::string> cells;
    int jobs = 1;
    // Generation knobs shared by every cell.
    double sporadic_fraction = 0.5; // standard mix; SporadicMix overrides per cell
    Tick period_min = 100;
    Tick period_max = 1000;
    std::uint64_t max_attempts = 500000;
};

struct ResultRow {
    std::string experiment;
    std::string group;
    AggregateStats stats;
};

struct CellLog {
    std::string name;
    std::size_t requested = 0;
    std::size_t generated = 0;
    std::size_t failed = 0;
};

using Series = std::pair<std::string, std::vector<std::pair<double, double>>>;

struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<std::uint64_t> multiples;
    std::vector<ResultRow> rows;
    std::vector<Series> series;
    std::vector<CellLog> cells;
    double wall_seconds = 0.0;
};

// Runs every (cell, repetition) unit: generate -> attack -> score. Units
// get seeds derived from (spec.seed, unit index) only, and aggregation is
// a deterministic post-pass, so results do not depend on spec.jobs.
// Generation failures are logged per cell and the run continues.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// The pinned summary table: experiment,group,success_rate,precision_mean,
// precision_sd,n.
std::string results_csv(const ExperimentResult& res);

// Writes results.csv, series_<name>.csv files and manifest.json into dir
// (created if missing).
void write_experiment_outputs(const ExperimentResult& res, const std::string& dir);

} // namespace rtleak
