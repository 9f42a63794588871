#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rtleak/sim.hpp"
#include "rtleak/task.hpp"
#include "rtleak/time_types.hpp"

namespace rtleak {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Taskset files are single JSON documents; see docs/formats.md.
TaskSet parse_taskset(std::istream& in, const std::string& what = "<stream>");
TaskSet load_taskset(const std::string& path);
std::string format_taskset(const TaskSet& ts);
void save_taskset(const TaskSet& ts, const std::string& path);

// Trace files are line oriented: one "task_id,start,end" record per slice
// and one "R,task_id,tick" record per release, all merged in time order.
void write_trace(std::ostream& out, const Trace& tr, const TaskSet& ts);
Trace parse_trace(std::istream& in, const TaskSet& ts, const std::string& what = "<stream>");

// Observed-interval files: one "start,end" line per interval.
void write_intervals(std::ostream& out, const std::vector<Interval>& ivs);
std::vector<Interval> parse_intervals(std::istream& in, const std::string& what = "<stream>");
std::vector<Interval> load_intervals(const std::string& path);

} // namespace rtleak
