#include "matsp/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace matsp {

using nlohmann::json;

namespace {

json point_to_json(const Point& p) { return json::array({p.x, p.y}); }

Point point_from_json(const json& j) { return Point{j.at(0).get<double>(), j.at(1).get<double>()}; }

// Not-finite doubles have no JSON literal; they become null and the reader
// restores them from context.
json radius_to_json(double r) {
    if (std::isfinite(r)) {
        return json(r);
    }
    return json();
}

}  // namespace

json scenario_to_json(const Scenario& s) {
    json j;
    j["format"] = "matsp-scenario/1";
    j["seed"] = s.seed;
    j["arena"] = json::array({s.params.arena_width, s.params.arena_height});
    j["min_separation"] = s.params.min_separation;
    j["arrival_interval"] = s.params.arrival_interval;
    j["agents"] = json::array();
    for (const Point& p : s.agent_starts) {
        j["agents"].push_back(point_to_json(p));
    }
    j["tasks"] = json::array();
    for (const Point& p : s.initial_tasks) {
        j["tasks"].push_back(point_to_json(p));
    }
    j["arrivals"] = json::array();
    for (const TaskArrival& a : s.arrivals) {
        j["arrivals"].push_back(json{{"step", a.step}, {"loc", point_to_json(a.location)}});
    }
    return j;
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    if (j.value("format", "") != "matsp-scenario/1") {
        throw TraceParseError("not a matsp scenario file (missing format tag)");
    }
    s.seed = j.at("seed").get<std::uint64_t>();
    s.params.arena_width = j.at("arena").at(0).get<double>();
    s.params.arena_height = j.at("arena").at(1).get<double>();
    s.params.min_separation = j.at("min_separation").get<double>();
    s.params.arrival_interval = j.at("arrival_interval").get<int>();
    for (const json& p : j.at("agents")) {
        s.agent_starts.push_back(point_from_json(p));
    }
    for (const json& p : j.at("tasks")) {
        s.initial_tasks.push_back(point_from_json(p));
    }
    for (const json& a : j.at("arrivals")) {
        s.arrivals.push_back(TaskArrival{a.at("step").get<int>(),
                                         point_from_json(a.at("loc"))});
    }
    return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write scenario file " + path.string());
    }
    out << scenario_to_json(s).dump(2) << '\n';
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read scenario file " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw TraceParseError("scenario file " + path.string() + ": " + e.what());
    }
    return scenario_from_json(j);
}

void write_trace(const TrialTrace& trace, std::ostream& out) {
    json header;
    header["type"] = "header";
    header["format"] = "matsp-trace/1";
    header["scenario_seed"] = trace.scenario_seed;
    header["algorithm"] = to_string(trace.algorithm);
    header["n_agents"] = trace.n_agents;
    header["n_tasks"] = trace.n_tasks_initial;
    header["n_tasks_total"] = trace.n_tasks_total;
    header["comm_radius"] = radius_to_json(trace.comm_radius);
    header["margin"] = radius_to_json(trace.consideration_margin);
    header["solver_seed"] = trace.solver_seed;
    header["starts"] = json::array();
    for (const Point& p : trace.agent_starts) {
        header["starts"].push_back(point_to_json(p));
    }
    header["tasks"] = json::array();
    for (const Task& t : trace.tasks) {
        header["tasks"].push_back(json::array({t.id, t.location.x, t.location.y,
                                               t.arrival_step}));
    }
    out << header.dump() << '\n';

    for (const StepRecord& step : trace.steps) {
        json j;
        j["type"] = "step";
        j["step"] = step.step;
        j["pos"] = json::array();
        for (const Point& p : step.positions) {
            j["pos"].push_back(point_to_json(p));
        }
        j["routes"] = step.routes;
        j["done"] = json::array();
        for (const CompletionEvent& e : step.completions) {
            j["done"].push_back(json::array({e.agent, e.task}));
        }
        j["new"] = json::array();
        for (const ArrivalEvent& e : step.arrivals) {
            j["new"].push_back(json::array({e.task, e.assigned}));
        }
        j["xchg"] = json::array();
        for (const ExchangeRecord& r : step.exchanges) {
            j["xchg"].push_back(json::array({r.pair.first, r.pair.second, r.to_first,
                                             r.to_second, r.cost_before, r.cost_after}));
        }
        j["cost"] = step.committed_cost;
        j["demes"] = step.demes_evolved;
        j["dist"] = step.distance_travelled;
        out << j.dump() << '\n';
    }

    json footer;
    footer["type"] = "end";
    footer["completed"] = trace.completed;
    footer["steps"] = trace.steps.size();
    out << footer.dump() << '\n';
}

void write_trace_file(const TrialTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write trace file " + path.string());
    }
    write_trace(trace, out);
}

namespace {

json parse_line(const std::string& line, int line_no) {
    try {
        return json::parse(line);
    } catch (const json::exception& e) {
        throw TraceParseError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
}

}  // namespace

TrialTrace read_trace(std::istream& in) {
    TrialTrace trace;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    bool have_end = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (have_end) {
            throw TraceParseError("trace line " + std::to_string(line_no) +
                                  ": record after end marker");
        }
        const json j = parse_line(line, line_no);
        try {
            const std::string type = j.at("type").get<std::string>();
            if (type == "header") {
                if (have_header) {
                    throw TraceParseError("trace line " + std::to_string(line_no) +
                                          ": duplicate header");
                }
                have_header = true;
                trace.scenario_seed = j.at("scenario_seed").get<std::uint64_t>();
                trace.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
                trace.n_agents = j.at("n_agents").get<int>();
                trace.n_tasks_initial = j.at("n_tasks").get<int>();
                trace.n_tasks_total = j.at("n_tasks_total").get<int>();
                const json& radius = j.at("comm_radius");
                trace.comm_radius = radius.is_null()
                                        ? (trace.algorithm == Algorithm::ea
                                               ? std::numeric_limits<double>::quiet_NaN()
                                               : std::numeric_limits<double>::infinity())
                                        : radius.get<double>();
                const json& margin = j.at("margin");
                trace.consideration_margin =
                    margin.is_null() ? (trace.algorithm == Algorithm::ea
                                            ? std::numeric_limits<double>::quiet_NaN()
                                            : std::numeric_limits<double>::infinity())
                                     : margin.get<double>();
                trace.solver_seed = j.at("solver_seed").get<std::uint64_t>();
                for (const json& p : j.at("starts")) {
                    trace.agent_starts.push_back(point_from_json(p));
                }
                for (const json& t : j.at("tasks")) {
                    Task task;
                    task.id = t.at(0).get<TaskId>();
                    task.location = Point{t.at(1).get<double>(), t.at(2).get<double>()};
                    task.arrival_step = t.at(3).get<int>();
                    task.status = TaskStatus::completed;
                    trace.tasks.push_back(task);
                }
            } else if (type == "step") {
                if (!have_header) {
                    throw TraceParseError("trace line " + std::to_string(line_no) +
                                          ": step before header");
                }
                StepRecord step;
                step.step = j.at("step").get<int>();
                for (const json& p : j.at("pos")) {
                    step.positions.push_back(point_from_json(p));
                }
                step.routes = j.at("routes").get<std::vector<Route>>();
                for (const json& e : j.at("done")) {
                    step.completions.push_back(
                        CompletionEvent{e.at(0).get<AgentId>(), e.at(1).get<TaskId>()});
                }
                for (const json& e : j.at("new")) {
                    step.arrivals.push_back(
                        ArrivalEvent{e.at(0).get<TaskId>(), e.at(1).get<AgentId>()});
                }
                for (const json& e : j.at("xchg")) {
                    ExchangeRecord r;
                    r.step = step.step;
                    r.pair = {e.at(0).get<AgentId>(), e.at(1).get<AgentId>()};
                    r.to_first = e.at(2).get<std::vector<TaskId>>();
                    r.to_second = e.at(3).get<std::vector<TaskId>>();
                    r.cost_before = e.at(4).get<double>();
                    r.cost_after = e.at(5).get<double>();
                    step.exchanges.push_back(std::move(r));
                }
                step.committed_cost = j.at("cost").get<double>();
                step.demes_evolved = j.at("demes").get<long>();
                step.distance_travelled = j.at("dist").get<double>();
                trace.steps.push_back(std::move(step));
            } else if (type == "end") {
                if (!have_header) {
                    throw TraceParseError("trace line " + std::to_string(line_no) +
                                          ": end before header");
                }
                have_end = true;
                trace.completed = j.at("completed").get<bool>();
                const auto steps = j.at("steps").get<std::size_t>();
                if (steps != trace.steps.size()) {
                    throw TraceParseError("trace line " + std::to_string(line_no) +
                                          ": end record counts " + std::to_string(steps) +
                                          " steps, file has " +
                                          std::to_string(trace.steps.size()));
                }
            } else {
                throw TraceParseError("trace line " + std::to_string(line_no) +
                                      ": unknown record type '" + type + "'");
            }
        } catch (const json::exception& e) {
            throw TraceParseError("trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_header) {
        throw TraceParseError("empty or headerless trace");
    }
    if (!have_end) {
        throw TraceParseError("truncated trace: no end record after line " +
                              std::to_string(line_no));
    }
    return trace;
}

TrialTrace read_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read trace file " + path.string());
    }
    return read_trace(in);
}

std::string report_csv_header() {
    return "scenario_seed,algorithm,n_agents,n_tasks,comm_radius,total_distance,"
           "straight_line_deviation,steps,n_exchanges,wall_time_s,completed";
}

namespace {

// Shortest round-trip decimal form, the same one the JSON layer emits.
std::string fmt(double v) { return json(v).dump(); }

}  // namespace

std::string report_csv_row(const TrialTrace& trace, const TrialReport& report) {
    std::ostringstream row;
    row << trace.scenario_seed << ',' << to_string(trace.algorithm) << ',' << trace.n_agents
        << ',' << trace.n_tasks_initial << ',';
    if (trace.algorithm != Algorithm::ea) {
        row << (std::isfinite(trace.comm_radius) ? fmt(trace.comm_radius) : "inf");
    }
    row << ',' << fmt(report.total_distance) << ',' << fmt(report.deviation) << ','
        << report.steps << ',' << report.n_exchanges << ',';
    char wall[32];
    std::snprintf(wall, sizeof(wall), "%.3f", report.wall_time_s);
    row << wall << ',' << (report.completed ? "true" : "false");
    return row.str();
}

}  // namespace matsp
