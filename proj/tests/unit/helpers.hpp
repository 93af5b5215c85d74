#pragma once

#include <set>
#include <vector>

#include "matsp/chromosome.hpp"
#include "matsp/problem_state.hpp"
#include "matsp/rng.hpp"

namespace matsp::test {

// Assembles a live state from raw coordinates; every task active.
inline ProblemState make_state(const std::vector<Point>& agents,
                               const std::vector<Point>& tasks, double speed = 5.0) {
    ProblemState state;
    for (std::size_t a = 0; a < agents.size(); ++a) {
        state.agents.push_back(AgentState{static_cast<AgentId>(a), agents[a], speed});
    }
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        state.tasks.push_back(Task{static_cast<TaskId>(t), tasks[t], TaskStatus::active, 0});
        state.active.insert(static_cast<TaskId>(t));
    }
    state.rebuild_matrix();
    return state;
}

inline ProblemState random_state(RngStream& rng, std::size_t n_agents, std::size_t n_tasks,
                                 double arena = 100.0) {
    std::vector<Point> agents;
    std::vector<Point> tasks;
    for (std::size_t i = 0; i < n_agents; ++i) {
        agents.push_back(Point{rng.uniform_real() * arena, rng.uniform_real() * arena});
    }
    for (std::size_t i = 0; i < n_tasks; ++i) {
        tasks.push_back(Point{rng.uniform_real() * arena, rng.uniform_real() * arena});
    }
    return make_state(agents, tasks);
}

// Random valid chromosome: uniform assignment, then per-route shuffle.
inline Chromosome random_chromosome(const ProblemState& state, RngStream& rng) {
    Chromosome x(state.agent_count());
    for (TaskId t : state.active) {
        x.mutable_route(static_cast<AgentId>(rng.pick_index(state.agent_count()))).push_back(t);
    }
    for (std::size_t a = 0; a < x.agent_count(); ++a) {
        rng.shuffle(x.mutable_route(static_cast<AgentId>(a)));
    }
    return x;
}

// Independent path-cost summation straight from coordinates; deliberately
// shares no code with CostMatrix or evaluate_cost.
inline double raw_path_cost(const Chromosome& x, const std::vector<Point>& agents,
                            const std::vector<Point>& tasks) {
    double total = 0.0;
    for (std::size_t a = 0; a < x.agent_count(); ++a) {
        Point prev = agents[a];
        for (TaskId t : x.route(static_cast<AgentId>(a))) {
            const Point& site = tasks[static_cast<std::size_t>(t)];
            total += std::hypot(site.x - prev.x, site.y - prev.y);
            prev = site;
        }
    }
    return total;
}

// Independent validity check: union equals required, no duplicates anywhere.
inline bool brute_valid(const Chromosome& x, const std::set<TaskId>& required) {
    std::set<TaskId> seen;
    std::size_t count = 0;
    for (const Route& r : x.routes()) {
        for (TaskId t : r) {
            seen.insert(t);
            ++count;
        }
    }
    return seen == required && count == required.size();
}

}  // namespace matsp::test
