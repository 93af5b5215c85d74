#pragma once

#include <set>
#include <string>
#include <vector>

#include "matsp/cost_matrix.hpp"
#include "matsp/types.hpp"

namespace matsp {

// One candidate solution: an ordered task route per agent. Routes of a valid
// chromosome are pairwise disjoint and together cover exactly the task set
// the chromosome claims (which, for pair demes, is a subset of the active
// tasks).
//
// The evaluated cost is cached against the stamp of the matrix it was
// computed with. Any mutation through mutable_route()/set_route() drops the
// cache; evaluating against a different matrix recomputes.
class Chromosome {
public:
    Chromosome() = default;
    explicit Chromosome(std::size_t n_agents) : routes_(n_agents) {}
    explicit Chromosome(std::vector<Route> routes) : routes_(std::move(routes)) {}

    std::size_t agent_count() const { return routes_.size(); }
    const std::vector<Route>& routes() const { return routes_; }
    const Route& route(AgentId a) const { return routes_[static_cast<std::size_t>(a)]; }

    Route& mutable_route(AgentId a) {
        invalidate_cache();
        return routes_[static_cast<std::size_t>(a)];
    }
    void set_route(AgentId a, Route r) {
        invalidate_cache();
        routes_[static_cast<std::size_t>(a)] = std::move(r);
    }

    // Union of all routes, in route order (agent 0 first).
    std::vector<TaskId> all_tasks() const;
    std::set<TaskId> task_set() const;

    bool operator==(const Chromosome& other) const { return routes_ == other.routes_; }
    bool operator!=(const Chromosome& other) const { return !(*this == other); }

    bool has_cached_cost(const CostMatrix& cm) const {
        return cache_valid_ && cache_stamp_ == cm.stamp();
    }
    double cached_cost_value() const { return cached_cost_; }
    void store_cost(const CostMatrix& cm, double cost) const {
        cache_valid_ = true;
        cache_stamp_ = cm.stamp();
        cached_cost_ = cost;
    }
    void invalidate_cache() { cache_valid_ = false; }

private:
    std::vector<Route> routes_;
    mutable bool cache_valid_ = false;
    mutable std::uint64_t cache_stamp_ = 0;
    mutable double cached_cost_ = 0.0;
};

// Total travel cost: for each agent, dummy-to-first-task plus consecutive
// legs; the return leg is free. Empty routes contribute nothing. Throws
// StructuralError if a route references a task the matrix has never seen.
double evaluate_cost(const Chromosome& x, const CostMatrix& cm);

// Cost of a single agent's route under the same rules.
double route_cost(const Route& route, AgentId agent, const CostMatrix& cm);

// Maximising fitness is minimising cost; fitness is simply the negated cost.
double fitness(const Chromosome& x, const CostMatrix& cm);

struct ValidationReport {
    std::vector<TaskId> duplicated;   // appears more than once across routes
    std::vector<TaskId> unallocated;  // required but absent
    std::vector<TaskId> foreign;      // present but not required

    bool ok() const { return duplicated.empty() && unallocated.empty() && foreign.empty(); }
    std::string describe() const;
};

ValidationReport validate_chromosome(const Chromosome& x, const std::set<TaskId>& required);

}  // namespace matsp
