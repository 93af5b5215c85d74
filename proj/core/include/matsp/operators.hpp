#pragma once

#include <optional>
#include <set>
#include <utility>

#include "matsp/chromosome.hpp"
#include "matsp/rng.hpp"

namespace matsp {

enum class OperatorKind { SwapMutation, MoveMutation, SBX, RBX, TwoOpt };

// Restricts an operator to the routes of one agent pair. A deme owned by
// agent k and paired with agent l evolves under mask (k, l); the personal
// deme's mask is (k, k), which permits route reordering but no reallocation.
// A default-constructed mask leaves every agent eligible (single-population
// case).
class OperatorMask {
public:
    OperatorMask() = default;
    OperatorMask(AgentId k, AgentId l) : pair_(std::make_pair(k, l)) {}

    bool eligible(AgentId a) const {
        return !pair_ || pair_->first == a || pair_->second == a;
    }
    const std::optional<std::pair<AgentId, AgentId>>& pair() const { return pair_; }

    std::vector<AgentId> eligible_agents(std::size_t n_agents) const;

private:
    std::optional<std::pair<AgentId, AgentId>> pair_;
};

// Offspring plus a flag telling the engine whether the operator actually
// altered anything. No-op outcomes (degenerate routes, empty donors) are
// surfaced so the engine can redraw instead of wasting an offspring slot.
struct OperatorResult {
    Chromosome child;
    bool changed = false;
};

struct CrossoverResult {
    Chromosome child1;
    Chromosome child2;
    bool changed = false;
};

// Transposes one uniformly chosen adjacent pair within one eligible route of
// length >= 2. Allocation is untouched.
OperatorResult mutate_swap(const Chromosome& x, const OperatorMask& mask, RngStream& rng);

// Moves one uniformly chosen task from an eligible donor route to a uniform
// position in a different eligible route.
OperatorResult mutate_move(const Chromosome& x, const OperatorMask& mask, RngStream& rng);

// Sequence-based crossover: picks one agent, breaks its route in both parents
// at independent uniform points (0..len inclusive), and splices pre-break of
// one parent onto post-break of the other. Children are repaired over the
// parents' common task set.
CrossoverResult crossover_sbx(const Chromosome& p1, const Chromosome& p2, const OperatorMask& mask,
                              const CostMatrix& cm, RngStream& rng);

// Route-based crossover: picks one agent and swaps its whole route between
// the parents, then repairs.
CrossoverResult crossover_rbx(const Chromosome& p1, const Chromosome& p2, const OperatorMask& mask,
                              const CostMatrix& cm, RngStream& rng);

// Makes a raw chromosome valid over `required`: duplicates beyond the first
// occurrence are dropped and missing tasks are re-inserted at the position of
// least cost increase. Only mask-eligible routes are edited; occurrences in
// ineligible routes are treated as fixed. Idempotent on valid input.
Chromosome repair(Chromosome x, const std::set<TaskId>& required, const OperatorMask& mask,
                  const CostMatrix& cm);

// Cost change of inserting task t at position pos (0..len) of agent a's
// route: positions past the end close for free.
double insertion_delta(const Route& r, AgentId a, TaskId t, std::size_t pos,
                       const CostMatrix& cm);

// Inserts t at the position of minimum cost increase. Ties go to the
// earliest position.
void cheapest_insert(Route& r, AgentId a, TaskId t, const CostMatrix& cm);

// 2-opt improvement on one uniformly chosen eligible route of length >= 3:
// first-improvement sweeps, repeated until no improving exchange remains
// (capped at 50 sweeps). Never increases cost; allocation is untouched.
OperatorResult improve_2opt(const Chromosome& x, const OperatorMask& mask, const CostMatrix& cm,
                            RngStream& rng);

}  // namespace matsp
