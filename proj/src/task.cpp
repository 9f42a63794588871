#include "rtleak/task.hpp"

#include <set>
#include <stdexcept>

namespace rtleak {

const char* to_string(TaskKind k) {
    return k == TaskKind::Periodic ? "periodic" : "sporadic";
}

int TaskSet::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < tasks.size(); ++i)
        if (tasks[i].id == id) return static_cast<int>(i);
    return -1;
}

const TaskSpec& TaskSet::observer() const {
    int i = observer_index();
    if (i < 0) throw std::logic_error("taskset has no observer task");
    return tasks[i];
}

const TaskSpec& TaskSet::victim() const {
    int i = victim_index();
    if (i < 0) throw std::logic_error("taskset has no victim task");
    return tasks[i];
}

ValidationReport validate_taskset(const TaskSet& ts) {
    ValidationReport rep;
    auto flag = [&rep](std::string msg) {
        rep.ok = false;
        rep.problems.push_back(std::move(msg));
    };

    if (ts.tasks.empty()) flag("taskset is empty");

    std::set<std::string> ids;
    std::set<Tick> periods;
    std::set<int> prios;
    for (const TaskSpec& t : ts.tasks) {
        if (t.id.empty()) flag("task with empty id");
        if (t.id.find_first_of(",\n\r") != std::string::npos)
            flag("task id '" + t.id + "' contains a separator character");
        if (!ids.insert(t.id).second) flag("duplicate task id '" + t.id + "'");
        if (t.period == 0) flag("task '" + t.id + "' has zero period");
        if (t.wcet == 0) flag("task '" + t.id + "' has zero wcet");
        if (t.wcet > t.period) flag("task '" + t.id + "' has wcet > period");
        if (t.deadline != t.period) flag("task '" + t.id + "' deadline must equal period");
        if (t.period > 0 && t.offset >= t.period) flag("task '" + t.id + "' offset must be < period");
        if (t.priority <= 0) flag("task '" + t.id + "' priority must be positive");
        if (t.period > 0 && !periods.insert(t.period).second)
            flag("duplicate period " + std::to_string(t.period));
        if (!prios.insert(t.priority).second)
            flag("duplicate priority " + std::to_string(t.priority));
    }

    int oi = ts.observer_index();
    int vi = ts.victim_index();
    if (oi < 0) flag("observer id '" + ts.observer_id + "' not in taskset");
    if (vi < 0) flag("victim id '" + ts.victim_id + "' not in taskset");
    if (oi >= 0 && vi >= 0) {
        if (oi == vi) flag("observer and victim must be distinct tasks");
        if (ts.tasks[vi].priority <= ts.tasks[oi].priority)
            flag("victim not higher priority than observer");
        if (ts.tasks[vi].kind != TaskKind::Periodic)
            flag("victim task must be periodic");
    }
    return rep;
}

void require_valid(const TaskSet& ts) {
    ValidationReport rep = validate_taskset(ts);
    if (rep.ok) return;
    std::string msg = "invalid taskset:";
    for (const std::string& p : rep.problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
}

} // namespace rtleak
