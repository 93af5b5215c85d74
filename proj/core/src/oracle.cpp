#include "matsp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace matsp {

std::uint64_t enumeration_size(std::size_t n_agents, std::size_t n_tasks) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < n_tasks; ++i) {
        count *= static_cast<std::uint64_t>(n_agents + i);
        if (count > kEnumerationGuard) {
            return kEnumerationGuard + 1;
        }
    }
    return count;
}

namespace {

// Inserting task k (in index order) at every position of every route visits
// each distinct arrangement exactly once: the final relative order of the
// tasks determines the insertion history.
void enumerate(std::size_t next, const StaticInstance& inst, const CostMatrix& cm,
               std::vector<Route>& routes, Chromosome& scratch, ExactSolution& best) {
    if (next == inst.tasks.size()) {
        for (std::size_t a = 0; a < routes.size(); ++a) {
            scratch.set_route(static_cast<AgentId>(a), routes[a]);
        }
        const double cost = evaluate_cost(scratch, cm);
        if (cost < best.cost) {
            best.cost = cost;
            best.best = scratch;
        }
        return;
    }
    const TaskId t = inst.tasks[next].id;
    for (auto& route : routes) {
        for (std::size_t pos = 0; pos <= route.size(); ++pos) {
            route.insert(route.begin() + static_cast<std::ptrdiff_t>(pos), t);
            enumerate(next + 1, inst, cm, routes, scratch, best);
            route.erase(route.begin() + static_cast<std::ptrdiff_t>(pos));
        }
    }
}

}  // namespace

ExactSolution solve_exact(const StaticInstance& inst) {
    if (enumeration_size(inst.agents.size(), inst.tasks.size()) > kEnumerationGuard) {
        throw std::invalid_argument("instance too large for exhaustive enumeration");
    }
    const CostMatrix cm = CostMatrix::build(inst.agents, inst.tasks);
    ExactSolution best;
    best.cost = std::numeric_limits<double>::infinity();
    best.best = Chromosome(inst.agents.size());

    std::vector<Route> routes(inst.agents.size());
    Chromosome scratch(inst.agents.size());
    enumerate(0, inst, cm, routes, scratch, best);
    return best;
}

ExactRouteSolution solve_exact_single_route(const std::vector<Point>& points, const Point& start) {
    if (points.size() > 9) {
        throw std::invalid_argument("too many points for permutation enumeration");
    }
    std::vector<std::size_t> perm(points.size());
    std::iota(perm.begin(), perm.end(), 0);

    ExactRouteSolution best;
    best.cost = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        Point prev = start;
        for (std::size_t idx : perm) {
            cost += distance(prev, points[idx]);
            prev = points[idx];
        }
        if (cost < best.cost) {
            best.cost = cost;
            best.order = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace matsp
