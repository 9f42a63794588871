#include "rtleak/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rtleak {

using ordered_json = nlohmann::ordered_json;

static ParseError at_line(const std::string& what, std::size_t line, const std::string& msg) {
    return ParseError(what + ":" + std::to_string(line) + ": " + msg);
}

TaskSet parse_taskset(std::istream& in, const std::string& what) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }

    try {
        TaskSet ts;
        for (const auto& jt : doc.at("tasks")) {
            TaskSpec t;
            t.id = jt.at("id").get<std::string>();
            std::string kind = jt.at("kind").get<std::string>();
            if (kind == "periodic")
                t.kind = TaskKind::Periodic;
            else if (kind == "sporadic")
                t.kind = TaskKind::Sporadic;
            else
                throw ParseError(what + ": unknown task kind '" + kind + "'");
            t.period = jt.at("period").get<Tick>();
            t.deadline = jt.at("deadline").get<Tick>();
            t.wcet = jt.at("wcet").get<Tick>();
            t.offset = jt.at("offset").get<Tick>();
            t.priority = jt.at("priority").get<int>();
            ts.tasks.push_back(std::move(t));
        }
        ts.observer_id = doc.at("observer").get<std::string>();
        ts.victim_id = doc.at("victim").get<std::string>();
        return ts;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(what + ": " + e.what());
    }
}

TaskSet load_taskset(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open taskset file '" + path + "'");
    return parse_taskset(f, path);
}

std::string format_taskset(const TaskSet& ts) {
    ordered_json doc;
    doc["tasks"] = ordered_json::array();
    for (const TaskSpec& t : ts.tasks) {
        ordered_json jt;
        jt["id"] = t.id;
        jt["kind"] = to_string(t.kind);
        jt["period"] = t.period;
        jt["deadline"] = t.deadline;
        jt["wcet"] = t.wcet;
        jt["offset"] = t.offset;
        jt["priority"] = t.priority;
        doc["tasks"].push_back(std::move(jt));
    }
    doc["observer"] = ts.observer_id;
    doc["victim"] = ts.victim_id;
    return doc.dump(2) + "\n";
}

void save_taskset(const TaskSet& ts, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write taskset file '" + path + "'");
    f << format_taskset(ts);
}

void write_trace(std::ostream& out, const Trace& tr, const TaskSet& ts) {
    // Merge releases and slices in time order; releases sort before slices
    // at the same tick, then by task id.
    std::size_t ri = 0, si = 0;
    auto rel_first = [&]() {
        if (ri >= tr.releases.size()) return false;
        if (si >= tr.slices.size()) return true;
        return tr.releases[ri].tick <= tr.slices[si].span.start;
    };
    while (ri < tr.releases.size() || si < tr.slices.size()) {
        if (rel_first()) {
            const Release& r = tr.releases[ri++];
            out << "R," << ts.tasks[r.task].id << ',' << r.tick << '\n';
        } else {
            const Slice& s = tr.slices[si++];
            out << ts.tasks[s.task].id << ',' << s.span.start << ',' << s.span.end << '\n';
        }
    }
}

static Tick parse_tick(const std::string& tok, const std::string& what, std::size_t line) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw at_line(what, line, "expected a non-negative integer, got '" + tok + "'");
    try {
        return std::stoull(tok);
    } catch (const std::out_of_range&) {
        throw at_line(what, line, "tick value out of range: '" + tok + "'");
    }
}

static std::vector<std::string> split_fields(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    for (;;) {
        std::size_t c = s.find(',', pos);
        if (c == std::string::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, c - pos));
        pos = c + 1;
    }
}

Trace parse_trace(std::istream& in, const TaskSet& ts, const std::string& what) {
    Trace tr;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f = split_fields(line);
        if (f.size() != 3) throw at_line(what, lineno, "expected 3 comma-separated fields");
        if (f[0] == "R") {
            int idx = ts.index_of(f[1]);
            if (idx < 0) throw at_line(what, lineno, "unknown task id '" + f[1] + "'");
            tr.releases.push_back({static_cast<std::uint32_t>(idx),
                                   parse_tick(f[2], what, lineno), 0});
        } else {
            int idx = ts.index_of(f[0]);
            if (idx < 0) throw at_line(what, lineno, "unknown task id '" + f[0] + "'");
            Tick a = parse_tick(f[1], what, lineno);
            Tick b = parse_tick(f[2], what, lineno);
            if (b < a) throw at_line(what, lineno, "slice end before start");
            tr.slices.push_back({static_cast<std::uint32_t>(idx), {a, b}});
            tr.horizon = std::max(tr.horizon, b);
        }
    }
    for (const Release& r : tr.releases) tr.horizon = std::max(tr.horizon, r.tick);
    return tr;
}

void write_intervals(std::ostream& out, const std::vector<Interval>& ivs) {
    for (const Interval& iv : ivs) out << iv.start << ',' << iv.end << '\n';
}

std::vector<Interval> parse_intervals(std::istream& in, const std::string& what) {
    std::vector<Interval> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f = split_fields(line);
        if (f.size() != 2) throw at_line(what, lineno, "expected 'start,end'");
        Tick a = parse_tick(f[0], what, lineno);
        Tick b = parse_tick(f[1], what, lineno);
        if (b < a) throw at_line(what, lineno, "interval end before start");
        out.push_back({a, b});
    }
    return out;
}

std::vector<Interval> load_intervals(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open intervals file '" + path + "'");
    return parse_intervals(f, path);
}

} // namespace rtleak
