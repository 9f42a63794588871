#pragma once

#include <string>
#include <vector>

#include "rtleak/time_types.hpp"

namespace rtleak {

enum class TaskKind { Periodic, Sporadic };

const char* to_string(TaskKind k);

// One task of a fixed-priority preemptive workload. For sporadic tasks the
// period is the minimum inter-arrival time. Implicit deadlines: deadline
// must equal period. Larger priority number runs first.
struct TaskSpec {
    std::string id;
    TaskKind kind = TaskKind::Periodic;
    Tick period = 0;
    Tick deadline = 0;
    Tick wcet = 0;
    Tick offset = 0; // first release tick
    int priority = 0;
};

struct TaskSet {
    std::vector<TaskSpec> tasks;
    std::string observer_id;
    std::string victim_id;

    // Index lookups return -1 when the id is absent.
    int index_of(const std::string& id) const;
    int observer_index() const { return index_of(observer_id); }
    int victim_index() const { return index_of(victim_id); }
    const TaskSpec& observer() const;
    const TaskSpec& victim() const;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> problems;
};

// Structural checks only; schedulability is response_time_analysis's job.
ValidationReport validate_taskset(const TaskSet& ts);

// Throws std::invalid_argument listing every problem when validation fails.
void require_valid(const TaskSet& ts);

} // namespace rtleak
