#pragma once

#include <vector>

#include "matsp/simulation.hpp"

namespace matsp {

// Per-trial metric bundle. Deviation measures churn: how much further the
// realised paths were than the straight chains through each agent's
// completed tasks in completion order. It can go negative because a task
// completes from up to the completion radius away.
struct TrialReport {
    double total_distance = 0.0;
    double straight_line_distance = 0.0;
    double deviation = 0.0;
    int steps = 0;
    int n_exchanges = 0;
    bool completed = false;
    double wall_time_s = 0.0;
    long deme_evolution_count = 0;
    std::vector<double> per_agent_distance;
    std::vector<double> per_agent_straight_line;
};

// Sum over agents of per-step displacements, recomputed from the position
// log (a pure function of the trace).
double total_distance(const TrialTrace& trace);
std::vector<double> per_agent_distance(const TrialTrace& trace);

// Per agent: distance from its start to its first completed task plus the
// chain of consecutive completed-task distances, in completion order.
std::vector<double> per_agent_straight_line(const TrialTrace& trace);

TrialReport make_report(const TrialTrace& trace, double wall_time_s = 0.0);

struct DistributionSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    std::size_t n = 0;
};

// Order statistics with linearly interpolated quartiles. Throws
// std::invalid_argument on an empty sample.
DistributionSummary aggregate(std::vector<double> values);

double median(std::vector<double> values);

}  // namespace matsp
