#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rtleak/attack.hpp"
#include "rtleak/capability.hpp"
#include "rtleak/experiment.hpp"
#include "rtleak/io.hpp"
#include "rtleak/ladder.hpp"
#include "rtleak/metrics.hpp"
#include "rtleak/observer.hpp"
#include "rtleak/sim.hpp"
#include "rtleak/taskgen.hpp"
#include "rtleak/variation.hpp"

namespace py = pybind11;
using namespace rtleak;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fixed-priority schedule simulation and arrival-offset inference";
    m.attr("__version__") = "0.1.0";

    py::register_exception<GenerationError>(m, "GenerationError");
    py::register_exception<ParseError>(m, "ParseError");

    // ---- core model --------------------------------------------------------

    py::enum_<TaskKind>(m, "TaskKind")
        .value("Periodic", TaskKind::Periodic)
        .value("Sporadic", TaskKind::Sporadic);

    py::class_<TaskSpec>(m, "TaskSpec")
        .def(py::init<>())
        .def(py::init([](std::string id, Tick period, Tick wcet, Tick offset, int priority,
                         TaskKind kind, std::optional<Tick> deadline) {
                 TaskSpec t;
                 t.id = std::move(id);
                 t.kind = kind;
                 t.period = period;
                 t.deadline = deadline ? *deadline : period;
                 t.wcet = wcet;
                 t.offset = offset;
                 t.priority = priority;
                 return t;
             }),
             py::arg("id"), py::arg("period"), py::arg("wcet"), py::arg("offset"),
             py::arg("priority"), py::arg("kind") = TaskKind::Periodic,
             py::arg("deadline") = std::nullopt)
        .def_readwrite("id", &TaskSpec::id)
        .def_readwrite("kind", &TaskSpec::kind)
        .def_readwrite("period", &TaskSpec::period)
        .def_readwrite("deadline", &TaskSpec::deadline)
        .def_readwrite("wcet", &TaskSpec::wcet)
        .def_readwrite("offset", &TaskSpec::offset)
        .def_readwrite("priority", &TaskSpec::priority)
        .def("__repr__", [](const TaskSpec& t) {
            std::ostringstream os;
            os << "TaskSpec(id='" << t.id << "', " << to_string(t.kind) << ", p=" << t.period
               << ", e=" << t.wcet << ", a=" << t.offset << ", prio=" << t.priority << ")";
            return os.str();
        });

    py::class_<TaskSet>(m, "TaskSet")
        .def(py::init<>())
        .def_readwrite("tasks", &TaskSet::tasks)
        .def_readwrite("observer_id", &TaskSet::observer_id)
        .def_readwrite("victim_id", &TaskSet::victim_id)
        .def("index_of", &TaskSet::index_of)
        .def("observer", &TaskSet::observer)
        .def("victim", &TaskSet::victim);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("ok", &ValidationReport::ok)
        .def_readonly("problems", &ValidationReport::problems);

    m.def("validate_taskset", &validate_taskset);
    m.def("require_valid", &require_valid);

    py::class_<Interval>(m, "Interval")
        .def(py::init<>())
        .def(py::init([](Tick start, Tick end) { return Interval{start, end}; }),
             py::arg("start"), py::arg("end"))
        .def_readwrite("start", &Interval::start)
        .def_readwrite("end", &Interval::end)
        .def("length", &Interval::length)
        .def("__eq__", [](const Interval& a, const Interval& b) { return a == b; })
        .def("__repr__", [](const Interval& iv) {
            return "[" + std::to_string(iv.start) + "," + std::to_string(iv.end) + ")";
        });

    m.def("gcd_pair", &gcd_pair);
    m.def("lcm_pair", &lcm_pair);

    // ---- simulation --------------------------------------------------------

    py::class_<VariationConfig>(m, "VariationConfig")
        .def(py::init<>())
        .def_readwrite("exec_mean_fraction", &VariationConfig::exec_mean_fraction)
        .def_readwrite("exec_upper_quantile", &VariationConfig::exec_upper_quantile)
        .def_readwrite("sporadic_mean_fraction", &VariationConfig::sporadic_mean_fraction)
        .def_readwrite("seed", &VariationConfig::seed);

    py::class_<Slice>(m, "Slice")
        .def_readonly("task", &Slice::task)
        .def_readonly("span", &Slice::span);
    py::class_<Release>(m, "Release")
        .def_readonly("task", &Release::task)
        .def_readonly("tick", &Release::tick)
        .def_readonly("cost", &Release::cost);
    py::class_<Completion>(m, "Completion")
        .def_readonly("task", &Completion::task)
        .def_readonly("tick", &Completion::tick);
    py::class_<DeadlineMiss>(m, "DeadlineMiss")
        .def_readonly("task", &DeadlineMiss::task)
        .def_readonly("deadline", &DeadlineMiss::deadline);
    py::class_<Trace>(m, "Trace")
        .def_readonly("horizon", &Trace::horizon)
        .def_readonly("slices", &Trace::slices)
        .def_readonly("releases", &Trace::releases)
        .def_readonly("completions", &Trace::completions)
        .def_readonly("misses", &Trace::misses);

    m.def("simulate", &simulate, py::arg("taskset"), py::arg("horizon"),
          py::arg("variation") = std::nullopt, py::call_guard<py::gil_scoped_release>());

    py::class_<RtaResult>(m, "RtaResult")
        .def_readonly("schedulable", &RtaResult::schedulable)
        .def_readonly("response", &RtaResult::response);
    m.def("response_time_analysis", &response_time_analysis);

    // ---- observation and inference -----------------------------------------

    py::class_<ObserverConfig>(m, "ObserverConfig")
        .def(py::init([](Tick lambda, Tick wcet, Tick attack_start, Tick attack_duration) {
                 return ObserverConfig{lambda, wcet, attack_start, attack_duration};
             }),
             py::arg("lambda_"), py::arg("wcet"), py::arg("attack_start") = 0,
             py::arg("attack_duration") = 0)
        .def_readwrite("lambda_", &ObserverConfig::lambda)
        .def_readwrite("wcet", &ObserverConfig::wcet)
        .def_readwrite("attack_start", &ObserverConfig::attack_start)
        .def_readwrite("attack_duration", &ObserverConfig::attack_duration);

    m.def("reconstruct_intervals", &reconstruct_intervals);

    py::class_<Ladder>(m, "Ladder")
        .def_readonly("period", &Ladder::period)
        .def_readonly("start", &Ladder::start)
        .def_readonly("eliminated", &Ladder::eliminated)
        .def("column_of", &Ladder::column_of)
        .def("survivor_count", &Ladder::survivor_count);

    py::class_<ColumnRun>(m, "ColumnRun")
        .def_readonly("start", &ColumnRun::start)
        .def_readonly("length", &ColumnRun::length);

    py::class_<InferenceResult>(m, "InferenceResult")
        .def_readonly("delta_hat", &InferenceResult::delta_hat)
        .def_readonly("a_hat", &InferenceResult::a_hat)
        .def_readonly("candidates", &InferenceResult::candidates)
        .def_readonly("largest_len", &InferenceResult::largest_len);

    m.def("build_ladder", &build_ladder, py::arg("victim_period"), py::arg("start") = 0);
    m.def("mark_intervals", &mark_intervals);
    m.def("infer_arrival_column", &infer_arrival_column);
    m.def("infer_initial_offset", &infer_initial_offset);
    m.def("predict_arrival", &predict_arrival);

    py::class_<CapabilityReport>(m, "CapabilityReport")
        .def_readonly("coverage", &CapabilityReport::coverage)
        .def_readonly("lambda_", &CapabilityReport::lambda)
        .def_readonly("lcm", &CapabilityReport::lcm)
        .def_readonly("full_coverage", &CapabilityReport::full_coverage);

    m.def("coverage_ratio", &coverage_ratio);
    m.def("choose_lambda", &choose_lambda);
    m.def("attack_window", &attack_window);
    m.def("analyze_capability", &analyze_capability);

    // ---- metrics -----------------------------------------------------------

    py::class_<RunOutcome>(m, "RunOutcome")
        .def_readonly("success", &RunOutcome::success)
        .def_readonly("precision", &RunOutcome::precision)
        .def_readonly("epsilon", &RunOutcome::epsilon)
        .def_readonly("duration_units", &RunOutcome::duration_units);

    py::class_<AggregateStats>(m, "AggregateStats")
        .def_readonly("success_rate", &AggregateStats::success_rate)
        .def_readonly("precision_mean", &AggregateStats::precision_mean)
        .def_readonly("precision_sd", &AggregateStats::precision_sd)
        .def_readonly("precision_min", &AggregateStats::precision_min)
        .def_readonly("precision_median", &AggregateStats::precision_median)
        .def_readonly("precision_max", &AggregateStats::precision_max)
        .def_readonly("n", &AggregateStats::n);

    m.def("offset_success", &offset_success);
    m.def("precision_from_epsilon", &precision_from_epsilon);
    m.def("precision_ratio", &precision_ratio);
    m.def("aggregate", &aggregate);

    // ---- generation ---------------------------------------------------------

    py::enum_<VictimMode>(m, "VictimMode")
        .value("LowestAboveObserver", VictimMode::LowestAboveObserver)
        .value("HighestPriority", VictimMode::HighestPriority);

    py::class_<GenConfig>(m, "GenConfig")
        .def(py::init<>())
        .def_readwrite("util_group", &GenConfig::util_group)
        .def_readwrite("n_tasks", &GenConfig::n_tasks)
        .def_readwrite("sporadic_fraction", &GenConfig::sporadic_fraction)
        .def_readwrite("victim_mode", &GenConfig::victim_mode)
        .def_readwrite("require_coverage_ge_1", &GenConfig::require_coverage_ge_1)
        .def_readwrite("coverage_group", &GenConfig::coverage_group)
        .def_readwrite("period_min", &GenConfig::period_min)
        .def_readwrite("period_max", &GenConfig::period_max)
        .def_readwrite("seed", &GenConfig::seed)
        .def_readwrite("max_attempts", &GenConfig::max_attempts);

    m.def("generate_taskset", &generate_taskset, py::call_guard<py::gil_scoped_release>());

    // ---- attack pipeline ----------------------------------------------------

    py::class_<AttackConfig>(m, "AttackConfig")
        .def(py::init<>())
        .def_readwrite("attack_start", &AttackConfig::attack_start)
        .def_readwrite("duration", &AttackConfig::duration)
        .def_readwrite("window_multiple", &AttackConfig::window_multiple)
        .def_readwrite("lambda_override", &AttackConfig::lambda_override)
        .def_readwrite("variation", &AttackConfig::variation);

    py::class_<AttackResult>(m, "AttackResult")
        .def_readonly("outcome", &AttackResult::outcome)
        .def_readonly("inference", &AttackResult::inference)
        .def_readonly("lambda_", &AttackResult::lambda)
        .def_readonly("lcm", &AttackResult::lcm)
        .def_readonly("duration", &AttackResult::duration)
        .def_readonly("coverage", &AttackResult::coverage)
        .def_readonly("observed", &AttackResult::observed);

    m.def("run_attack", &run_attack, py::call_guard<py::gil_scoped_release>());
    m.def("run_attack_multiples", &run_attack_multiples,
          py::call_guard<py::gil_scoped_release>());

    // ---- experiments --------------------------------------------------------

    py::enum_<ExperimentKind>(m, "ExperimentKind")
        .value("DurationSweep", ExperimentKind::DurationSweep)
        .value("TasksUtilGrid", ExperimentKind::TasksUtilGrid)
        .value("VictimPriority", ExperimentKind::VictimPriority)
        .value("SporadicMix", ExperimentKind::SporadicMix)
        .value("CoverageGroups", ExperimentKind::CoverageGroups);

    m.def("parse_experiment_kind", &parse_experiment_kind);

    py::class_<ExperimentSpec>(m, "ExperimentSpec")
        .def(py::init<>())
        .def_readwrite("kind", &ExperimentSpec::kind)
        .def_readwrite("seed", &ExperimentSpec::seed)
        .def_readwrite("tasksets_per_cell", &ExperimentSpec::tasksets_per_cell)
        .def_readwrite("duration_multiples", &ExperimentSpec::duration_multiples)
        .def_readwrite("lambda_override", &ExperimentSpec::lambda_override)
        .def_readwrite("deterministic", &ExperimentSpec::deterministic)
        .def_readwrite("cells", &ExperimentSpec::cells)
        .def_readwrite("jobs", &ExperimentSpec::jobs)
        .def_readwrite("sporadic_fraction", &ExperimentSpec::sporadic_fraction)
        .def_readwrite("period_min", &ExperimentSpec::period_min)
        .def_readwrite("period_max", &ExperimentSpec::period_max)
        .def_readwrite("max_attempts", &ExperimentSpec::max_attempts);

    py::class_<ResultRow>(m, "ResultRow")
        .def_readonly("experiment", &ResultRow::experiment)
        .def_readonly("group", &ResultRow::group)
        .def_readonly("stats", &ResultRow::stats);

    py::class_<CellLog>(m, "CellLog")
        .def_readonly("name", &CellLog::name)
        .def_readonly("requested", &CellLog::requested)
        .def_readonly("generated", &CellLog::generated)
        .def_readonly("failed", &CellLog::failed);

    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("spec", &ExperimentResult::spec)
        .def_readonly("multiples", &ExperimentResult::multiples)
        .def_readonly("rows", &ExperimentResult::rows)
        .def_readonly("series", &ExperimentResult::series)
        .def_readonly("cells", &ExperimentResult::cells)
        .def_readonly("wall_seconds", &ExperimentResult::wall_seconds);

    m.def("run_experiment", &run_experiment, py::call_guard<py::gil_scoped_release>());
    m.def("results_csv", &results_csv);
    m.def("write_experiment_outputs", &write_experiment_outputs);

    // ---- io ------------------------------------------------------------------

    m.def("load_taskset", &load_taskset);
    m.def("save_taskset", &save_taskset);
    m.def("format_taskset", &format_taskset);
    m.def("taskset_from_json", [](const std::string& text) {
        std::istringstream in(text);
        return parse_taskset(in, "<string>");
    });
    m.def("load_intervals", &load_intervals);
}
