#pragma once

#include <vector>

#include "matsp/chromosome.hpp"
#include "matsp/types.hpp"

namespace matsp {

// Exhaustive exact solver for tiny static instances. Used as the ground
// truth the evolutionary solvers are measured against; it is deliberately
// dumb (full enumeration of every assignment and ordering) so that its
// correctness is self-evident.
struct StaticInstance {
    std::vector<AgentState> agents;
    std::vector<Task> tasks;
};

struct ExactSolution {
    double cost = 0.0;
    Chromosome best;
};

// Number of distinct (assignment, per-route ordering) combinations for the
// instance: M * (M+1) * ... * (M+N-1). Saturates at the guard limit.
std::uint64_t enumeration_size(std::size_t n_agents, std::size_t n_tasks);

constexpr std::uint64_t kEnumerationGuard = 10'000'000;

// Enumerates every way of distributing the tasks over the agents' routes,
// scoring each with evaluate_cost, and returns the minimum. Throws
// std::invalid_argument if the enumeration would exceed kEnumerationGuard.
ExactSolution solve_exact(const StaticInstance& inst);

struct ExactRouteSolution {
    double cost = 0.0;
    std::vector<std::size_t> order;  // indices into the input points
};

// Minimum-cost open tour from `start` through all points, return leg free.
// At most 9 points (9! permutations). Costs are summed directly from
// coordinates, independent of CostMatrix.
ExactRouteSolution solve_exact_single_route(const std::vector<Point>& points, const Point& start);

}  // namespace matsp
