#include "matsp/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace matsp {

std::vector<double> per_agent_distance(const TrialTrace& trace) {
    std::vector<double> out(trace.agent_starts.size(), 0.0);
    std::vector<Point> prev = trace.agent_starts;
    for (const StepRecord& step : trace.steps) {
        for (std::size_t a = 0; a < out.size(); ++a) {
            out[a] += distance(prev[a], step.positions[a]);
        }
        prev = step.positions;
    }
    return out;
}

double total_distance(const TrialTrace& trace) {
    double total = 0.0;
    for (double d : per_agent_distance(trace)) {
        total += d;
    }
    return total;
}

std::vector<double> per_agent_straight_line(const TrialTrace& trace) {
    std::vector<double> out(trace.agent_starts.size(), 0.0);
    std::vector<Point> anchor = trace.agent_starts;
    for (const StepRecord& step : trace.steps) {
        for (const CompletionEvent& e : step.completions) {
            const auto a = static_cast<std::size_t>(e.agent);
            const Point& site = trace.tasks[static_cast<std::size_t>(e.task)].location;
            out[a] += distance(anchor[a], site);
            anchor[a] = site;
        }
    }
    return out;
}

TrialReport make_report(const TrialTrace& trace, double wall_time_s) {
    TrialReport report;
    report.per_agent_distance = per_agent_distance(trace);
    report.per_agent_straight_line = per_agent_straight_line(trace);
    for (std::size_t a = 0; a < report.per_agent_distance.size(); ++a) {
        report.total_distance += report.per_agent_distance[a];
        report.straight_line_distance += report.per_agent_straight_line[a];
    }
    report.deviation = report.total_distance - report.straight_line_distance;
    report.steps = static_cast<int>(trace.steps.size());
    for (const StepRecord& step : trace.steps) {
        report.n_exchanges += static_cast<int>(step.exchanges.size());
        report.deme_evolution_count += step.demes_evolved;
    }
    report.completed = trace.completed;
    report.wall_time_s = wall_time_s;
    return report;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

DistributionSummary aggregate(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("aggregate() needs at least one value");
    }
    std::sort(values.begin(), values.end());
    DistributionSummary s;
    s.n = values.size();
    s.min = values.front();
    s.max = values.back();
    s.q1 = quantile_sorted(values, 0.25);
    s.median = quantile_sorted(values, 0.5);
    s.q3 = quantile_sorted(values, 0.75);
    return s;
}

double median(std::vector<double> values) {
    return aggregate(std::move(values)).median;
}

}  // namespace matsp
