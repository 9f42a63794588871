#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rtleak/attack.hpp"
#include "rtleak/capability.hpp"
#include "rtleak/experiment.hpp"
#include "rtleak/io.hpp"
#include "rtleak/ladder.hpp"
#include "rtleak/taskgen.hpp"

using namespace rtleak;

namespace {

std::string run_label(const ColumnRun& r, Tick period) {
    char buf[64];
    Tick end = r.length >= period ? period : (r.start + r.length) % period;
    std::snprintf(buf, sizeof buf, "[%" PRIu64 ",%" PRIu64 ")", r.start, end);
    return buf;
}

void print_inference(std::ostream& out, const InferenceResult& inf, Tick period,
                     std::size_t survivors) {
    out << "survivors: " << survivors << " of " << period << "\n";
    out << "candidates:";
    for (const ColumnRun& r : inf.candidates) out << ' ' << run_label(r, period);
    if (inf.candidates.empty()) out << " none";
    out << "\n";
    if (inf.delta_hat)
        out << "delta_hat: " << *inf.delta_hat << "\n";
    else
        out << "delta_hat: none\n";
    if (inf.a_hat) out << "a_hat: " << *inf.a_hat << "\n";
}

std::optional<VariationConfig> make_variation(bool deterministic, std::uint64_t seed) {
    if (deterministic) return std::nullopt;
    VariationConfig var;
    var.seed = seed;
    return var;
}

// Writes to the path or stdout for "-".
void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
}

int cmd_generate(const std::string& out_dir, int count, GenConfig base) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    nlohmann::ordered_json man;
    man["seed"] = base.seed;
    man["count"] = count;
    man["tasksets"] = nlohmann::ordered_json::array();
    for (int i = 0; i < count; ++i) {
        GenConfig gen = base;
        gen.seed = base.seed ^ static_cast<std::uint64_t>(i);
        TaskSet ts = generate_taskset(gen);
        char name[32];
        std::snprintf(name, sizeof name, "taskset_%03d.json", i);
        save_taskset(ts, (fs::path(out_dir) / name).string());

        double util = 0.0;
        for (const TaskSpec& t : ts.tasks)
            util += static_cast<double>(t.wcet) / static_cast<double>(t.period);
        CapabilityReport cap = analyze_capability(ts);
        man["tasksets"].push_back({{"file", name},
                                   {"utilization", util},
                                   {"coverage", cap.coverage},
                                   {"lambda", cap.lambda},
                                   {"lcm", cap.lcm}});
    }
    std::ofstream mj(fs::path(out_dir) / "manifest.json");
    mj << man.dump(2) << '\n';
    std::cout << "wrote " << count << " tasksets to " << out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-priority schedule simulator and arrival-inference toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "generate synthetic tasksets");
    std::string gen_out = "tasksets";
    int gen_count = 10;
    GenConfig gen_cfg;
    std::string gen_mode = "low";
    double cov_lo = -1.0, cov_hi = -1.0;
    gen_cmd->add_option("--out", gen_out, "output directory")->required();
    gen_cmd->add_option("--count", gen_count, "number of tasksets");
    gen_cmd->add_option("--seed", gen_cfg.seed, "master seed");
    gen_cmd->add_option("--util-group", gen_cfg.util_group, "utilization group x (0..9)");
    gen_cmd->add_option("--n-tasks", gen_cfg.n_tasks, "tasks per set");
    gen_cmd->add_option("--sporadic-fraction", gen_cfg.sporadic_fraction, "sporadic share");
    gen_cmd->add_option("--victim-mode", gen_mode, "victim placement: low|high");
    gen_cmd->add_option("--coverage-group", cov_lo, "coverage group lower bound")
        ->needs(gen_cmd->add_option("--coverage-group-hi", cov_hi, "coverage group upper bound"));
    gen_cmd->add_option("--period-min", gen_cfg.period_min, "smallest period");
    gen_cmd->add_option("--period-max", gen_cfg.period_max, "largest period");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "run the scheduler and export a trace");
    std::string sim_ts, sim_out = "-";
    Tick sim_horizon = 0;
    std::uint64_t sim_seed = 0;
    bool sim_det = false;
    sim_cmd->add_option("--taskset", sim_ts, "taskset file")->required();
    sim_cmd->add_option("--horizon", sim_horizon, "simulation horizon in ticks")->required();
    sim_cmd->add_option("--seed", sim_seed, "variation seed");
    sim_cmd->add_flag("--deterministic", sim_det, "disable the variation model");
    sim_cmd->add_option("--out", sim_out, "trace file ('-' = stdout)");

    // attack
    auto* atk_cmd = app.add_subcommand("attack", "full inference pipeline on one taskset");
    std::string atk_ts, atk_dir;
    std::uint64_t atk_mult = 10, atk_seed = 0;
    Tick atk_duration = 0, atk_lambda = 0, atk_start = 0;
    bool atk_det = false;
    atk_cmd->add_option("--taskset", atk_ts, "taskset file")->required();
    atk_cmd->add_option("--multiple", atk_mult, "window as a multiple of lcm(p_o,p_v)");
    atk_cmd->add_option("--duration", atk_duration, "window in ticks (overrides --multiple)");
    atk_cmd->add_option("--start", atk_start, "attack start tick");
    atk_cmd->add_option("--lambda", atk_lambda, "measurement budget override");
    atk_cmd->add_option("--seed", atk_seed, "variation seed");
    atk_cmd->add_flag("--deterministic", atk_det, "disable the variation model");
    atk_cmd->add_option("--out", atk_dir, "directory for observed intervals and report");

    // analyze
    auto* ana_cmd = app.add_subcommand("analyze", "validate and profile a taskset");
    std::string ana_ts;
    ana_cmd->add_option("--taskset", ana_ts, "taskset file")->required();

    // sweep
    auto* swp_cmd = app.add_subcommand("sweep", "design-space experiment harness");
    ExperimentSpec spec;
    std::string swp_kind = "duration", swp_out;
    std::string swp_cells, swp_multiples;
    Tick swp_lambda = 0;
    swp_cmd->add_option("--kind", swp_kind,
                        "duration|tasks-util|victim-priority|sporadic-mix|coverage");
    swp_cmd->add_option("--out", swp_out, "output directory")->required();
    swp_cmd->add_option("--seed", spec.seed, "master seed");
    swp_cmd->add_option("--cells", swp_cells, "comma-separated cell name filters");
    swp_cmd->add_option("--tasksets-per-cell", spec.tasksets_per_cell, "repetitions per cell");
    swp_cmd->add_option("--duration-multiples", swp_multiples,
                        "comma-separated lcm multiples, e.g. 1,2,5,10");
    swp_cmd->add_option("--lambda", swp_lambda, "measurement budget override");
    swp_cmd->add_flag("--deterministic", spec.deterministic, "disable the variation model");
    swp_cmd->add_option("--sporadic-fraction", spec.sporadic_fraction,
                        "sporadic share for the standard grid");
    swp_cmd->add_option("--jobs", spec.jobs, "worker threads");

    // infer
    auto* inf_cmd = app.add_subcommand("infer", "ladder inference from an interval file");
    std::string inf_file, inf_out;
    Tick inf_period = 0, inf_start = 0;
    inf_cmd->add_option("--intervals", inf_file, "observed-interval file")->required();
    inf_cmd->add_option("--period", inf_period, "victim period")->required();
    inf_cmd->add_option("--start", inf_start, "ladder origin (attack start)");
    inf_cmd->add_option("--out", inf_out, "report file ('-' = stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) {
            if (gen_mode == "low")
                gen_cfg.victim_mode = VictimMode::LowestAboveObserver;
            else if (gen_mode == "high")
                gen_cfg.victim_mode = VictimMode::HighestPriority;
            else
                throw std::invalid_argument("--victim-mode must be low or high");
            if (cov_lo >= 0.0) {
                gen_cfg.coverage_group = {cov_lo, cov_hi};
                gen_cfg.require_coverage_ge_1 = false;
            }
            return cmd_generate(gen_out, gen_count, gen_cfg);
        }

        if (*sim_cmd) {
            TaskSet ts = load_taskset(sim_ts);
            Trace tr = simulate(ts, sim_horizon, make_variation(sim_det, sim_seed));
            std::ostringstream os;
            write_trace(os, tr, ts);
            write_text(sim_out, os.str());
            if (!tr.misses.empty()) {
                std::cerr << "deadline misses: " << tr.misses.size() << " (first: task '"
                          << ts.tasks[tr.misses.front().task].id << "' at "
                          << tr.misses.front().deadline << ")\n";
                return 2;
            }
            return 0;
        }

        if (*atk_cmd) {
            TaskSet ts = load_taskset(atk_ts);
            AttackConfig cfg;
            cfg.attack_start = atk_start;
            cfg.window_multiple = atk_mult;
            if (atk_cmd->count("--duration")) cfg.duration = atk_duration;
            if (atk_cmd->count("--lambda")) cfg.lambda_override = atk_lambda;
            cfg.variation = make_variation(atk_det, atk_seed);
            AttackResult ar = run_attack(ts, cfg);

            const TaskSpec& v = ts.victim();
            std::cout << "lcm: " << ar.lcm << "  lambda: " << ar.lambda
                      << "  coverage: " << ar.coverage << "  duration: " << ar.duration
                      << "\nobserved intervals: " << ar.observed.size() << "\n";
            Ladder lad = build_ladder(v.period, atk_start);
            mark_intervals(lad, ar.observed);
            print_inference(std::cout, ar.inference, v.period, lad.survivor_count());
            std::cout << "true offset: " << v.offset << "\nsuccess: "
                      << (ar.outcome.success ? "yes" : "no")
                      << "\nprecision: " << ar.outcome.precision << "\n";

            if (!atk_dir.empty()) {
                namespace fs = std::filesystem;
                fs::create_directories(atk_dir);
                std::ofstream iv(fs::path(atk_dir) / "observed.csv");
                write_intervals(iv, ar.observed);
            }
            return ar.outcome.success ? 0 : 3;
        }

        if (*ana_cmd) {
            TaskSet ts = load_taskset(ana_ts);
            ValidationReport rep = validate_taskset(ts);
            if (!rep.ok) {
                std::cout << "invalid taskset:\n";
                for (const std::string& p : rep.problems) std::cout << "  " << p << "\n";
                return 2;
            }
            RtaResult rta = response_time_analysis(ts);
            std::cout << "id        kind      period  wcet  offset  prio  response\n";
            for (std::size_t i = 0; i < ts.tasks.size(); ++i) {
                const TaskSpec& t = ts.tasks[i];
                std::printf("%-9s %-9s %6" PRIu64 " %5" PRIu64 " %7" PRIu64 " %5d %9" PRIu64 "%s\n",
                            t.id.c_str(), to_string(t.kind), t.period, t.wcet, t.offset,
                            t.priority, rta.response[i],
                            rta.response[i] > t.deadline ? "  MISS" : "");
            }
            std::cout << "schedulable: " << (rta.schedulable ? "yes" : "no") << "\n";
            CapabilityReport cap = analyze_capability(ts);
            std::cout << "observer: " << ts.observer_id << "  victim: " << ts.victim_id
                      << "\ncoverage ratio: " << cap.coverage
                      << (cap.full_coverage ? " (full)" : " (partial)")
                      << "\nlambda: " << cap.lambda << "\nlcm(p_o,p_v): " << cap.lcm
                      << "\nattack window at 10x lcm: " << attack_window(ts.observer().period, ts.victim().period, 10)
                      << "\n";
            return rta.schedulable ? 0 : 2;
        }

        if (*swp_cmd) {
            spec.kind = parse_experiment_kind(swp_kind);
            if (swp_cmd->count("--lambda")) spec.lambda_override = swp_lambda;
            if (!swp_cells.empty()) {
                std::stringstream ss(swp_cells);
                std::string tok;
                while (std::getline(ss, tok, ',')) spec.cells.push_back(tok);
            }
            if (!swp_multiples.empty()) {
                std::stringstream ss(swp_multiples);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    spec.duration_multiples.push_back(std::stoull(tok));
            }
            ExperimentResult res = run_experiment(spec);
            write_experiment_outputs(res, swp_out);
            std::size_t failed = 0;
            for (const CellLog& c : res.cells) failed += c.failed;
            std::cout << "cells: " << res.cells.size() << "  rows: " << res.rows.size()
                      << "  generation failures: " << failed << "\nwall: " << res.wall_seconds
                      << " s\nresults in " << swp_out << "/results.csv\n";
            return 0;
        }

        if (*inf_cmd) {
            std::vector<Interval> ivs = load_intervals(inf_file);
            Ladder lad = build_ladder(inf_period, inf_start);
            mark_intervals(lad, ivs);
            InferenceResult inf = infer_arrival_column(lad);
            if (inf.delta_hat)
                inf.a_hat = infer_initial_offset(*inf.delta_hat, inf_start, inf_period);
            std::ostringstream os;
            print_inference(os, inf, inf_period, lad.survivor_count());
            write_text(inf_out.empty() ? "-" : inf_out, os.str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
