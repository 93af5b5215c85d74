#pragma once

#include <set>
#include <utility>
#include <vector>

#include "matsp/engine.hpp"

namespace matsp {

struct CommsConfig {
    enum class Mode { centralised, decentralised };

    Mode mode = Mode::decentralised;
    double comm_radius = 75.0;          // metres; pairs at or inside can exchange
    double consideration_margin = 10.0; // demes are evolved for agents within radius + margin

    // Centralised operation is expressed as unlimited communication: every
    // pair is feasible and every deme stays active.
    static CommsConfig centralised();
    static CommsConfig decentralised(double radius = 75.0, double margin = 10.0);

    double consideration_radius() const { return comm_radius + consideration_margin; }
};

// Canonical unordered agent pair: first < second.
using AgentPair = std::pair<AgentId, AgentId>;

// What one agent believes: who holds which tasks, and which tasks are done.
// An agent's entry about itself is ground truth at all times; entries about
// others go stale while out of contact.
struct AllocationView {
    std::vector<std::set<TaskId>> allocation;
    std::set<TaskId> completed;
};

struct ExchangeRecord {
    int step = 0;
    AgentPair pair{0, 0};
    std::vector<TaskId> to_first;   // tasks handed to pair.first
    std::vector<TaskId> to_second;  // tasks handed to pair.second
    double cost_before = 0.0;       // combined committed route cost of the pair
    double cost_after = 0.0;        // combined route cost of the adopted individual
};

// One deme: the population agent `owner` uses to reason about reallocations
// with agent `paired` (route order only when paired == owner). Individuals
// carry full-width chromosomes whose routes outside the pair stay empty, so
// a chromosome's cost is exactly the pair's cost.
struct Deme {
    AgentId paired = 0;
    bool active = true;  // inside the owner's consideration radius
    Population pop;
    RngStream rng;
};

struct DemeSet {
    AgentId owner = 0;
    std::vector<Deme> demes;  // indexed by paired agent id; demes[owner] is personal

    Deme& deme(AgentId paired) { return demes[static_cast<std::size_t>(paired)]; }
    const Deme& deme(AgentId paired) const { return demes[static_cast<std::size_t>(paired)]; }
};

// Everything one multi-demic run carries between steps: the deme grid, each
// agent's beliefs, the authoritative allocation (a partition of the active
// tasks) and the routes agents are actually following.
struct MultiDemicState {
    std::vector<DemeSet> deme_sets;
    std::vector<AllocationView> views;
    std::vector<std::set<TaskId>> allocation;
    std::vector<Route> routes;
    EvolutionConfig cfg;
    RngStream protocol_rng;

    std::size_t agent_count() const { return deme_sets.size(); }
};

// M deme sets of M populations each. The initial allocation is the
// nearest-agent assignment, which every agent can compute from the shared
// initial state, so all views start out complete and true.
MultiDemicState build_deme_sets(const ProblemState& state, const EvolutionConfig& cfg,
                                const CommsConfig& comms, RngStream& rng);

// Step 1: which pairs may communicate this round. Centralised: all pairs.
// Decentralised: pairs within comm_radius (boundary inclusive). Ascending
// canonical order.
std::vector<AgentPair> feasible_exchanges(const ProblemState& state, const CommsConfig& comms);

// Agents whose demes k evolves: k itself plus everyone within the
// consideration radius (boundary inclusive). Centralised: everyone.
std::vector<AgentId> active_demes(AgentId k, const ProblemState& state,
                                  const CommsConfig& comms);

// Re-derives every deme's active flag from current positions. Demes leaving
// the consideration radius freeze as-is; they are reconciled by the next
// knowledge update after reactivation.
void refresh_active_flags(MultiDemicState& mds, const ProblemState& state,
                          const CommsConfig& comms);

// Steps 2 and 6: propagate true allocations and completed-task knowledge
// across each feasible pair, then bring every active deme's individuals in
// line with the owner's (possibly still partial) view: believed-completed and
// foreign tasks are deleted, missing tasks are re-inserted at their cheapest
// position in the believed owner's route, and individuals sharing nothing
// with the believed task set are replaced outright.
void knowledge_update(MultiDemicState& mds, const ProblemState& state,
                      const std::vector<AgentPair>& feasible);

// Step 3: for each feasible pair (k, l), copies of the best n_migrate
// individuals of P_kl valid under l's view displace the worst members of
// P_lk, and symmetrically. Population sizes are unchanged.
void migrate(MultiDemicState& mds, const ProblemState& state,
             const std::vector<AgentPair>& feasible);

// Step 4: pairs are visited in uniformly random order; for each, the best
// individual of P_kl and P_lk is compared against the pair's committed route
// cost, and if strictly better its reallocation is committed to both agents'
// true allocations (an agent trades at most once per round). Committing also
// reconciles both agents' demes and injects the winning individual so step 5
// sees personal demes consistent with the new truth.
std::vector<ExchangeRecord> negotiate_exchanges(MultiDemicState& mds, const ProblemState& state,
                                                const std::vector<AgentPair>& feasible);

// Step 5: the best individual of the personal deme P_kk, whose route k task
// set must equal k's true allocation. Throws StructuralError on mismatch.
Route best_route(AgentId k, const MultiDemicState& mds, const CostMatrix& cm);

struct ExchangeRoundResult {
    std::vector<AgentPair> feasible;
    std::vector<ExchangeRecord> records;
};

// The full six-step synchronous exchange: feasibility, knowledge update,
// migration, negotiation, route selection, knowledge update. Also refreshes
// deme activity from current positions before the round begins.
ExchangeRoundResult exchange_round(MultiDemicState& mds, const ProblemState& state,
                                   const CommsConfig& comms);

// Evolves every active deme for cfg.generations_per_step generations.
// Returns the number of deme-generations run (the work measure the run-time
// scaling claims are stated in).
long evolve_active_demes(MultiDemicState& mds, const ProblemState& state);

// World-event hooks. Only the involved agent's knowledge changes; everyone
// else finds out through later knowledge updates.
void note_completion(MultiDemicState& mds, AgentId agent, TaskId task);
void note_arrival(MultiDemicState& mds, const ProblemState& state, TaskId task,
                  AgentId receiver);

}  // namespace matsp
