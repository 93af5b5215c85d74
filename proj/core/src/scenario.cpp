#include "matsp/scenario.hpp"

#include <string>
#include <utility>

#include "matsp/rng.hpp"

namespace matsp {

namespace {

constexpr int kPlacementAttempts = 10'000;

Point sample_separated(RngStream& rng, const ScenarioParams& p,
                       const std::vector<Point>& existing) {
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
        const Point candidate{rng.uniform_real() * p.arena_width,
                              rng.uniform_real() * p.arena_height};
        bool clear = true;
        for (const Point& other : existing) {
            if (distance(candidate, other) < p.min_separation) {
                clear = false;
                break;
            }
        }
        if (clear) {
            return candidate;
        }
    }
    throw ScenarioError("could not place entity with min separation " +
                        std::to_string(p.min_separation) + " after " +
                        std::to_string(kPlacementAttempts) + " attempts");
}

}  // namespace

Scenario generate_scenario(std::uint64_t seed, int n_agents, int n_tasks,
                           const ScenarioParams& params) {
    if (n_agents < 1 || n_tasks < 0) {
        throw ScenarioError("scenario needs at least one agent and a nonnegative task count");
    }
    Scenario s;
    s.seed = seed;
    s.params = params;
    RngStream rng(seed);

    // Initial entities are mutually separated: agents and tasks together.
    std::vector<Point> placed;
    for (int i = 0; i < n_agents; ++i) {
        s.agent_starts.push_back(sample_separated(rng, params, placed));
        placed.push_back(s.agent_starts.back());
    }
    for (int i = 0; i < n_tasks; ++i) {
        s.initial_tasks.push_back(sample_separated(rng, params, placed));
        placed.push_back(s.initial_tasks.back());
    }

    // A further 50% (rounded down), one per interval. Locations keep the
    // separation against every task sampled so far but not against agents,
    // whose positions at arrival time are unknowable here.
    std::vector<Point> task_sites = s.initial_tasks;
    const int n_arrivals = n_tasks / 2;
    for (int i = 0; i < n_arrivals; ++i) {
        TaskArrival arrival;
        arrival.step = (i + 1) * params.arrival_interval;
        arrival.location = sample_separated(rng, params, task_sites);
        task_sites.push_back(arrival.location);
        s.arrivals.push_back(arrival);
    }
    return s;
}

std::vector<Scenario> scenario_set(std::uint64_t seed_base, int n_agents, int n_tasks,
                                   int count) {
    std::vector<Scenario> out;
    out.reserve(static_cast<std::size_t>(count));
    const RngStream sized = RngStream(seed_base).derive(static_cast<std::uint64_t>(n_agents),
                                                        static_cast<std::uint64_t>(n_tasks));
    for (int i = 0; i < count; ++i) {
        RngStream child = sized.derive(static_cast<std::uint64_t>(i));
        out.push_back(generate_scenario(child.next_u64(), n_agents, n_tasks));
    }
    return out;
}

std::vector<Scenario> paper_suite(std::uint64_t seed_base) {
    std::vector<Scenario> out;
    for (const auto& [agents, tasks] : {std::pair{3, 25}, std::pair{5, 35}, std::pair{7, 45}}) {
        std::vector<Scenario> set = scenario_set(seed_base, agents, tasks);
        out.insert(out.end(), set.begin(), set.end());
    }
    return out;
}

}  // namespace matsp
