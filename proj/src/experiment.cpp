#include "rtleak/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "rtleak/attack.hpp"

namespace rtleak {

const char* to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::DurationSweep: return "duration";
    case ExperimentKind::TasksUtilGrid: return "tasks-util";
    case ExperimentKind::VictimPriority: return "victim-priority";
    case ExperimentKind::SporadicMix: return "sporadic-mix";
    case ExperimentKind::CoverageGroups: return "coverage";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
    for (ExperimentKind k :
         {ExperimentKind::DurationSweep, ExperimentKind::TasksUtilGrid,
          ExperimentKind::VictimPriority, ExperimentKind::SporadicMix,
          ExperimentKind::CoverageGroups})
        if (name == to_string(k)) return k;
    throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

namespace {

const int kTaskCounts[] = {5, 7, 9, 11, 13, 15};
const VictimMode kModes[] = {VictimMode::LowestAboveObserver, VictimMode::HighestPriority};
const double kSporadicShares[] = {0.0, 0.25, 0.5, 0.75, 1.0};

const char* mode_tag(VictimMode m) {
    return m == VictimMode::LowestAboveObserver ? "low" : "high";
}

// One point of the standard design grid (utilization group x task count x
// victim placement).
struct GridPoint {
    int x;
    int n;
    VictimMode mode;
};

std::vector<GridPoint> standard_grid() {
    std::vector<GridPoint> g;
    for (int x = 0; x <= 9; ++x)
        for (int n : kTaskCounts)
            for (VictimMode m : kModes) g.push_back({x, n, m});
    return g;
}

std::string grid_name(const GridPoint& p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "x%d/n%d/%s", p.x, p.n, mode_tag(p.mode));
    return buf;
}

struct Cell {
    std::string name;
    // Fixed grid point for the plain kinds; mixed kinds draw the point from
    // the grid round-robin by repetition index.
    std::optional<GridPoint> fixed;
    double sporadic_fraction;
    std::optional<std::pair<double, double>> coverage_group;
};

std::vector<Cell> make_cells(const ExperimentSpec& spec) {
    std::vector<Cell> cells;
    switch (spec.kind) {
    case ExperimentKind::DurationSweep:
    case ExperimentKind::TasksUtilGrid:
    case ExperimentKind::VictimPriority:
        for (const GridPoint& p : standard_grid())
            cells.push_back({grid_name(p), p, spec.sporadic_fraction, std::nullopt});
        break;
    case ExperimentKind::SporadicMix:
        for (double f : kSporadicShares) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "sporadic=%d", static_cast<int>(f * 100.0 + 0.5));
            cells.push_back({buf, std::nullopt, f, std::nullopt});
        }
        break;
    case ExperimentKind::CoverageGroups:
        for (int g = 0; g <= 9; ++g) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "cov=g%d", g);
            cells.push_back({buf, std::nullopt, spec.sporadic_fraction,
                             std::make_pair(0.001 + 0.1 * g, 0.100 + 0.1 * g)});
        }
        break;
    }

    if (!spec.cells.empty()) {
        std::vector<Cell> kept;
        for (const Cell& c : cells)
            for (const std::string& f : spec.cells)
                if (c.name.find(f) != std::string::npos) {
                    kept.push_back(c);
                    break;
                }
        cells = std::move(kept);
    }
    if (cells.empty()) throw std::invalid_argument("cell filter matched nothing");
    return cells;
}

struct Unit {
    std::size_t cell = 0;
    GridPoint point{};
    bool ok = false;
    std::vector<RunOutcome> outcomes; // parallel to the multiples list
};

struct Pool {
    std::vector<RunOutcome> out;
    void add(const RunOutcome& o) { out.push_back(o); }
};

std::string fmt_group(const char* fmt, ...) {
    char buf[64];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

} // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    auto t0 = std::chrono::steady_clock::now();
    if (spec.tasksets_per_cell <= 0) throw std::invalid_argument("tasksets_per_cell must be > 0");

    ExperimentResult res;
    res.spec = spec;
    res.multiples = spec.duration_multiples;
    if (res.multiples.empty()) {
        if (spec.kind == ExperimentKind::DurationSweep)
            for (std::uint64_t m = 1; m <= 10; ++m) res.multiples.push_back(m);
        else
            res.multiples = {10};
    }

    const std::vector<Cell> cells = make_cells(spec);
    const std::vector<GridPoint> grid = standard_grid();
    const std::size_t reps = static_cast<std::size_t>(spec.tasksets_per_cell);
    const std::size_t total = cells.size() * reps;

    std::vector<Unit> units(total);

    auto run_unit = [&](std::size_t id) {
        Unit& u = units[id];
        const std::size_t ci = id / reps;
        const std::size_t rep = id % reps;
        const Cell& cell = cells[ci];
        u.cell = ci;
        u.point = cell.fixed ? *cell.fixed : grid[rep % grid.size()];

        GenConfig gen;
        gen.util_group = u.point.x;
        gen.n_tasks = u.point.n;
        gen.victim_mode = u.point.mode;
        gen.sporadic_fraction = cell.sporadic_fraction;
        gen.coverage_group = cell.coverage_group;
        gen.require_coverage_ge_1 = !cell.coverage_group.has_value();
        gen.period_min = spec.period_min;
        gen.period_max = spec.period_max;
        gen.max_attempts = spec.max_attempts;
        gen.seed = spec.seed ^ (2 * id);

        TaskSet ts;
        try {
            ts = generate_taskset(gen);
        } catch (const GenerationError&) {
            u.ok = false; // logged per cell; the run continues
            return;
        }

        AttackConfig atk;
        atk.lambda_override = spec.lambda_override;
        if (!spec.deterministic) {
            VariationConfig var;
            var.seed = spec.seed ^ (2 * id + 1);
            atk.variation = var;
        }
        std::vector<AttackResult> ars = run_attack_multiples(ts, atk, res.multiples);
        u.outcomes.reserve(ars.size());
        for (const AttackResult& a : ars) u.outcomes.push_back(a.outcome);
        u.ok = true;
    };

    if (spec.jobs <= 1) {
        for (std::size_t id = 0; id < total; ++id) run_unit(id);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < spec.jobs; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t id = next.fetch_add(1);
                    if (id >= total) return;
                    run_unit(id);
                }
            });
        for (std::thread& t : pool) t.join();
    }

    for (const Cell& c : cells) res.cells.push_back({c.name, reps, 0, 0});
    for (const Unit& u : units) {
        if (u.ok)
            ++res.cells[u.cell].generated;
        else
            ++res.cells[u.cell].failed;
    }

    // Aggregation: deterministic single-threaded pass over the unit slots.
    const std::string ex = to_string(spec.kind);
    auto emit = [&res, &ex](const std::string& group, const Pool& pool) {
        if (pool.out.empty()) return;
        res.rows.push_back({ex, group, aggregate(pool.out)});
    };
    auto last = res.multiples.size() - 1; // index of the longest window

    switch (spec.kind) {
    case ExperimentKind::DurationSweep: {
        std::vector<std::pair<double, double>> s_succ, s_prec;
        for (std::size_t mi = 0; mi < res.multiples.size(); ++mi) {
            Pool p;
            for (const Unit& u : units)
                if (u.ok) p.add(u.outcomes[mi]);
            emit(fmt_group("m=%llu", static_cast<unsigned long long>(res.multiples[mi])), p);
            if (!p.out.empty()) {
                AggregateStats st = aggregate(p.out);
                double x = static_cast<double>(res.multiples[mi]);
                s_succ.emplace_back(x, st.success_rate);
                s_prec.emplace_back(x, st.precision_mean);
            }
        }
        res.series.push_back({"success_vs_duration", s_succ});
        res.series.push_back({"precision_vs_duration", s_prec});
        break;
    }
    case ExperimentKind::TasksUtilGrid: {
        for (int n : kTaskCounts) {
            std::vector<std::pair<double, double>> s;
            for (int x = 0; x <= 9; ++x) {
                Pool p;
                for (const Unit& u : units)
                    if (u.ok && u.point.n == n && u.point.x == x) p.add(u.outcomes[last]);
                emit(fmt_group("n=%d,x=%d", n, x), p);
                if (!p.out.empty()) s.emplace_back(x, aggregate(p.out).precision_mean);
            }
            res.series.push_back({fmt_group("precision_vs_util_n%d", n), s});
        }
        break;
    }
    case ExperimentKind::VictimPriority: {
        for (VictimMode m : kModes) {
            std::vector<std::pair<double, double>> s_n, s_x;
            for (int n : kTaskCounts) {
                Pool p;
                for (const Unit& u : units)
                    if (u.ok && u.point.mode == m && u.point.n == n) p.add(u.outcomes[last]);
                emit(fmt_group("mode=%s,n=%d", mode_tag(m), n), p);
                if (!p.out.empty()) s_n.emplace_back(n, aggregate(p.out).precision_mean);
            }
            for (int x = 0; x <= 9; ++x) {
                Pool p;
                for (const Unit& u : units)
                    if (u.ok && u.point.mode == m && u.point.x == x) p.add(u.outcomes[last]);
                emit(fmt_group("mode=%s,x=%d", mode_tag(m), x), p);
                if (!p.out.empty()) s_x.emplace_back(x, aggregate(p.out).precision_mean);
            }
            res.series.push_back({fmt_group("precision_vs_n_%s", mode_tag(m)), s_n});
            res.series.push_back({fmt_group("precision_vs_util_%s", mode_tag(m)), s_x});
        }
        break;
    }
    case ExperimentKind::SporadicMix:
    case ExperimentKind::CoverageGroups: {
        std::vector<std::pair<double, double>> s_succ, s_prec;
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            Pool p;
            for (const Unit& u : units)
                if (u.ok && u.cell == ci) p.add(u.outcomes[last]);
            emit(cells[ci].name, p);
            if (!p.out.empty()) {
                AggregateStats st = aggregate(p.out);
                double x = spec.kind == ExperimentKind::SporadicMix
                               ? kSporadicShares[ci] * 100.0
                               : static_cast<double>(ci);
                s_succ.emplace_back(x, st.success_rate);
                s_prec.emplace_back(x, st.precision_mean);
            }
        }
        const char* tag = spec.kind == ExperimentKind::SporadicMix ? "sporadic" : "coverage";
        res.series.push_back({fmt_group("success_vs_%s", tag), s_succ});
        res.series.push_back({fmt_group("precision_vs_%s", tag), s_prec});
        break;
    }
    }

    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

static std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string results_csv(const ExperimentResult& res) {
    std::string out = "experiment,group,success_rate,precision_mean,precision_sd,n\n";
    for (const ResultRow& r : res.rows) {
        out += r.experiment + ',' + r.group + ',' + fmt_double(r.stats.success_rate) + ',' +
               fmt_double(r.stats.precision_mean) + ',' + fmt_double(r.stats.precision_sd) +
               ',' + std::to_string(r.stats.n) + '\n';
    }
    return out;
}

void write_experiment_outputs(const ExperimentResult& res, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    std::ofstream csv(fs::path(dir) / "results.csv");
    if (!csv) throw std::runtime_error("cannot write results.csv in '" + dir + "'");
    csv << results_csv(res);

    for (const Series& s : res.series) {
        std::ofstream f(fs::path(dir) / ("series_" + s.first + ".csv"));
        f << "x,y\n";
        for (const auto& [x, y] : s.second) f << fmt_double(x) << ',' << fmt_double(y) << '\n';
    }

    nlohmann::ordered_json man;
    man["experiment"] = to_string(res.spec.kind);
    man["seed"] = res.spec.seed;
    man["tasksets_per_cell"] = res.spec.tasksets_per_cell;
    man["duration_multiples"] = res.multiples;
    man["deterministic"] = res.spec.deterministic;
    man["sporadic_fraction"] = res.spec.sporadic_fraction;
    man["jobs"] = res.spec.jobs;
    if (res.spec.lambda_override) man["lambda_override"] = *res.spec.lambda_override;
    man["period_min"] = res.spec.period_min;
    man["period_max"] = res.spec.period_max;
    man["cells"] = nlohmann::ordered_json::array();
    for (const CellLog& c : res.cells)
        man["cells"].push_back({{"name", c.name},
                                {"requested", c.requested},
                                {"generated", c.generated},
                                {"failed", c.failed}});
    man["wall_seconds"] = res.wall_seconds;
    std::ofstream mj(fs::path(dir) / "manifest.json");
    mj << man.dump(2) << '\n';
}

} // namespace rtleak
