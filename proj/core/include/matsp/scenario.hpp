#pragma once

#include <cstdint>
#include <vector>

#include "matsp/types.hpp"

namespace matsp {

struct ScenarioParams {
    double arena_width = 200.0;
    double arena_height = 200.0;
    double min_separation = 1.0;
    int arrival_interval = 5;  // steps between scheduled task arrivals
};

struct TaskArrival {
    int step = 0;
    Point location;
};

// A seeded, immutable trial definition: initial placements plus the full
// task-arrival schedule. Arrival locations are fixed at generation time so a
// scenario file replays identically anywhere.
struct Scenario {
    std::uint64_t seed = 0;
    ScenarioParams params;
    std::vector<Point> agent_starts;
    std::vector<Point> initial_tasks;
    std::vector<TaskArrival> arrivals;

    std::size_t agent_count() const { return agent_starts.size(); }
    std::size_t initial_task_count() const { return initial_tasks.size(); }
    std::size_t total_task_count() const { return initial_tasks.size() + arrivals.size(); }
};

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Deterministic in all arguments. Initial agents and tasks are uniform over
// the arena with pairwise separation >= min_separation; a further
// floor(n_tasks / 2) arrival locations are sampled the same way (checked
// against all task locations, not agents) and scheduled one per interval.
// Throws ScenarioError if rejection sampling cannot place an entity.
Scenario generate_scenario(std::uint64_t seed, int n_agents, int n_tasks,
                           const ScenarioParams& params = {});

// The benchmark suite: 50 scenarios for each of (3 agents, 25 tasks),
// (5, 35) and (7, 45), seeded deterministically from seed_base.
std::vector<Scenario> paper_suite(std::uint64_t seed_base);

// The 50 scenarios for one (n_agents, n_tasks) pair, same seeding scheme.
std::vector<Scenario> scenario_set(std::uint64_t seed_base, int n_agents, int n_tasks,
                                   int count = 50);

}  // namespace matsp
