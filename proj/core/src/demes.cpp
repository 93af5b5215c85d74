#include "matsp/demes.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace matsp {

namespace {

constexpr double kWorthwhileEps = 1e-9;
constexpr std::uint64_t kProtocolTag = 0x70726f746fULL;

double agent_distance(const ProblemState& state, AgentId a, AgentId b) {
    return distance(state.agents[static_cast<std::size_t>(a)].position,
                    state.agents[static_cast<std::size_t>(b)].position);
}

std::set<TaskId> pair_task_set(const Chromosome& x, AgentId k, AgentId l) {
    std::set<TaskId> out(x.route(k).begin(), x.route(k).end());
    out.insert(x.route(l).begin(), x.route(l).end());
    return out;
}

std::size_t pair_task_count(const Chromosome& x, AgentId k, AgentId l) {
    return x.route(k).size() + (l == k ? 0 : x.route(l).size());
}

// Believed task sets for the deme pair under the owner's view.
struct BelievedPair {
    std::set<TaskId> own;     // tasks of the deme owner (k)
    std::set<TaskId> paired;  // tasks of the paired agent (l), empty when l == k
    std::set<TaskId> all;
};

BelievedPair believed_pair(const AllocationView& view, AgentId k, AgentId l) {
    BelievedPair bp;
    bp.own = view.allocation[static_cast<std::size_t>(k)];
    if (l != k) {
        bp.paired = view.allocation[static_cast<std::size_t>(l)];
    }
    bp.all = bp.own;
    bp.all.insert(bp.paired.begin(), bp.paired.end());
    return bp;
}

// Rebuild an individual directly from the view: own tasks in the owner's
// route, the paired agent's tasks in theirs, ascending id order.
Chromosome view_consistent_individual(std::size_t n_agents, AgentId k, AgentId l,
                                      const BelievedPair& bp) {
    Chromosome fresh(n_agents);
    fresh.set_route(k, Route(bp.own.begin(), bp.own.end()));
    if (l != k) {
        fresh.set_route(l, Route(bp.paired.begin(), bp.paired.end()));
    }
    return fresh;
}

// Brings every individual of the deme in line with the owner's view: the
// pair's combined task set must equal the believed union. Tasks the view no
// longer accounts for are deleted, missing ones are inserted at the cheapest
// position of the believed owner's route, and individuals sharing nothing
// with the believed set are replaced outright.
void reconcile_deme(Deme& deme, DemeSet& set, const AllocationView& view, const CostMatrix& cm) {
    const AgentId k = set.owner;
    const AgentId l = deme.paired;
    const BelievedPair bp = believed_pair(view, k, l);

    for (Chromosome& member : deme.pop.members) {
        const std::set<TaskId> present = pair_task_set(member, k, l);
        if (present == bp.all && present.size() == pair_task_count(member, k, l)) {
            continue;
        }

        bool any_overlap = false;
        for (TaskId t : present) {
            if (bp.all.count(t) != 0) {
                any_overlap = true;
                break;
            }
        }
        if (!any_overlap && !bp.all.empty()) {
            member = view_consistent_individual(member.agent_count(), k, l, bp);
            continue;
        }

        // Drop what the view does not account for (stale, completed or
        // duplicated), keeping first occurrences in owner-then-paired order.
        std::set<TaskId> kept;
        for (AgentId a : {k, l}) {
            const Route& r = member.route(a);
            Route filtered;
            filtered.reserve(r.size());
            for (TaskId t : r) {
                if (bp.all.count(t) != 0 && kept.insert(t).second) {
                    filtered.push_back(t);
                }
            }
            if (filtered.size() != r.size()) {
                member.set_route(a, std::move(filtered));
            }
            if (l == k) {
                break;
            }
        }
        // Insert what the view says should be here but is not.
        for (TaskId t : bp.all) {
            if (kept.count(t) != 0) {
                continue;
            }
            const AgentId target = (bp.own.count(t) != 0) ? k : l;
            cheapest_insert(member.mutable_route(target), target, t, cm);
        }
    }
}

void reconcile_agent_demes(MultiDemicState& mds, AgentId agent, const CostMatrix& cm) {
    DemeSet& set = mds.deme_sets[static_cast<std::size_t>(agent)];
    for (Deme& deme : set.demes) {
        if (deme.active) {
            reconcile_deme(deme, set, mds.views[static_cast<std::size_t>(agent)], cm);
        }
    }
}

// Replace the worst member (highest cost, then highest index) with a copy.
// An individual the population already holds is not duplicated.
void inject_individual(Population& pop, const Chromosome& candidate, const CostMatrix& cm) {
    std::size_t worst = 0;
    double worst_cost = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pop.members.size(); ++i) {
        if (pop.members[i] == candidate) {
            return;
        }
        const double c = evaluate_cost(pop.members[i], cm);
        if (c >= worst_cost) {
            worst_cost = c;
            worst = i;
        }
    }
    pop.members[worst] = candidate;
}

}  // namespace

CommsConfig CommsConfig::centralised() {
    CommsConfig c;
    c.mode = Mode::centralised;
    c.comm_radius = std::numeric_limits<double>::infinity();
    c.consideration_margin = std::numeric_limits<double>::infinity();
    return c;
}

CommsConfig CommsConfig::decentralised(double radius, double margin) {
    CommsConfig c;
    c.mode = Mode::decentralised;
    c.comm_radius = radius;
    c.consideration_margin = margin;
    return c;
}

MultiDemicState build_deme_sets(const ProblemState& state, const EvolutionConfig& cfg,
                                const CommsConfig& comms, RngStream& rng) {
    const std::size_t n = state.agent_count();
    const std::vector<Route> initial = nearest_agent_allocation(state);

    MultiDemicState mds;
    mds.cfg = cfg;
    mds.protocol_rng = rng.derive(kProtocolTag);
    mds.routes = initial;
    mds.allocation.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        mds.allocation[k] = std::set<TaskId>(initial[k].begin(), initial[k].end());
    }

    // The nearest-agent split is computable by every agent from the shared
    // initial state, so all views start complete and true.
    mds.views.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        mds.views[k].allocation = mds.allocation;
    }

    mds.deme_sets.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        DemeSet& set = mds.deme_sets[k];
        set.owner = static_cast<AgentId>(k);
        set.demes.reserve(n);
        for (std::size_t l = 0; l < n; ++l) {
            Deme deme;
            deme.paired = static_cast<AgentId>(l);
            deme.rng = rng.derive(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(l));

            std::vector<Route> restricted(n);
            restricted[k] = initial[k];
            if (l != k) {
                restricted[l] = initial[l];
            }
            deme.pop = population_from_allocation(restricted, cfg.mu, deme.rng);
            set.demes.push_back(std::move(deme));
        }
    }
    refresh_active_flags(mds, state, comms);
    return mds;
}

std::vector<AgentPair> feasible_exchanges(const ProblemState& state, const CommsConfig& comms) {
    std::vector<AgentPair> pairs;
    const auto n = static_cast<AgentId>(state.agent_count());
    for (AgentId a = 0; a < n; ++a) {
        for (AgentId b = a + 1; b < n; ++b) {
            if (comms.mode == CommsConfig::Mode::centralised ||
                agent_distance(state, a, b) <= comms.comm_radius) {
                pairs.emplace_back(a, b);
            }
        }
    }
    return pairs;
}

std::vector<AgentId> active_demes(AgentId k, const ProblemState& state,
                                  const CommsConfig& comms) {
    std::vector<AgentId> out;
    const auto n = static_cast<AgentId>(state.agent_count());
    for (AgentId l = 0; l < n; ++l) {
        if (l == k || comms.mode == CommsConfig::Mode::centralised ||
            agent_distance(state, k, l) <= comms.consideration_radius()) {
            out.push_back(l);
        }
    }
    return out;
}

void refresh_active_flags(MultiDemicState& mds, const ProblemState& state,
                          const CommsConfig& comms) {
    for (DemeSet& set : mds.deme_sets) {
        const std::vector<AgentId> active = active_demes(set.owner, state, comms);
        for (Deme& deme : set.demes) {
            deme.active = std::binary_search(active.begin(), active.end(), deme.paired);
        }
    }
}

void knowledge_update(MultiDemicState& mds, const ProblemState& state,
                      const std::vector<AgentPair>& feasible) {
    const std::size_t n = mds.agent_count();

    // Self-knowledge is always current.
    for (std::size_t k = 0; k < n; ++k) {
        mds.views[k].allocation[k] = mds.allocation[k];
    }
    // Feasible pairs swap their true allocations and pool their completion
    // knowledge (completion facts are immutable, so merging is safe).
    for (const auto& [a, b] : feasible) {
        AllocationView& va = mds.views[static_cast<std::size_t>(a)];
        AllocationView& vb = mds.views[static_cast<std::size_t>(b)];
        va.allocation[static_cast<std::size_t>(b)] = mds.allocation[static_cast<std::size_t>(b)];
        vb.allocation[static_cast<std::size_t>(a)] = mds.allocation[static_cast<std::size_t>(a)];
        va.completed.insert(vb.completed.begin(), vb.completed.end());
        vb.completed = va.completed;
    }
    // Newly learned completions invalidate stale beliefs about anyone.
    for (std::size_t k = 0; k < n; ++k) {
        AllocationView& view = mds.views[k];
        for (std::set<TaskId>& alloc : view.allocation) {
            for (TaskId t : view.completed) {
                alloc.erase(t);
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        reconcile_agent_demes(mds, static_cast<AgentId>(k), state.cost_matrix);
    }
}

void migrate(MultiDemicState& mds, const ProblemState& state,
             const std::vector<AgentPair>& feasible) {
    const CostMatrix& cm = state.cost_matrix;
    const int n_migrate = std::max(0, mds.cfg.n_migrate);
    if (n_migrate == 0) {
        return;
    }

    for (const auto& [k, l] : feasible) {
        Population& pkl = mds.deme_sets[static_cast<std::size_t>(k)].deme(l).pop;
        Population& plk = mds.deme_sets[static_cast<std::size_t>(l)].deme(k).pop;

        auto select_valid = [&](const Population& from, const AllocationView& receiver_view) {
            const BelievedPair bp = believed_pair(receiver_view, k, l);
            std::vector<std::size_t> order(from.members.size());
            for (std::size_t i = 0; i < order.size(); ++i) {
                order[i] = i;
            }
            std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                return evaluate_cost(from.members[x], cm) < evaluate_cost(from.members[y], cm);
            });
            std::vector<Chromosome> picked;
            for (std::size_t i : order) {
                if (picked.size() == static_cast<std::size_t>(n_migrate)) {
                    break;
                }
                const Chromosome& m = from.members[i];
                if (pair_task_set(m, k, l) == bp.all &&
                    pair_task_count(m, k, l) == bp.all.size()) {
                    picked.push_back(m);
                }
            }
            return picked;
        };

        // Snapshot both directions before inserting anything.
        const std::vector<Chromosome> to_lk =
            select_valid(pkl, mds.views[static_cast<std::size_t>(l)]);
        const std::vector<Chromosome> to_kl =
            select_valid(plk, mds.views[static_cast<std::size_t>(k)]);

        for (const Chromosome& m : to_lk) {
            inject_individual(plk, m, cm);
        }
        for (const Chromosome& m : to_kl) {
            inject_individual(pkl, m, cm);
        }
    }
}

std::vector<ExchangeRecord> negotiate_exchanges(MultiDemicState& mds, const ProblemState& state,
                                                const std::vector<AgentPair>& feasible) {
    const CostMatrix& cm = state.cost_matrix;
    std::vector<ExchangeRecord> records;
    std::vector<bool> traded(mds.agent_count(), false);

    std::vector<AgentPair> order = feasible;
    mds.protocol_rng.shuffle(order);

    for (const auto& [k, l] : order) {
        if (traded[static_cast<std::size_t>(k)] || traded[static_cast<std::size_t>(l)]) {
            continue;
        }
        std::set<TaskId> truth_union = mds.allocation[static_cast<std::size_t>(k)];
        truth_union.insert(mds.allocation[static_cast<std::size_t>(l)].begin(),
                           mds.allocation[static_cast<std::size_t>(l)].end());

        const Chromosome* candidate = nullptr;
        double candidate_cost = std::numeric_limits<double>::infinity();
        for (const Population* pop : {&mds.deme_sets[static_cast<std::size_t>(k)].deme(l).pop,
                                      &mds.deme_sets[static_cast<std::size_t>(l)].deme(k).pop}) {
            for (const Chromosome& m : pop->members) {
                if (pair_task_set(m, k, l) != truth_union ||
                    pair_task_count(m, k, l) != truth_union.size()) {
                    continue;
                }
                const double c = evaluate_cost(m, cm);
                if (c < candidate_cost) {
                    candidate_cost = c;
                    candidate = &m;
                }
            }
        }
        if (candidate == nullptr) {
            continue;
        }

        // Judge the proposed split at its best routing: a reallocation must
        // not lose to the incumbent just because the pair deme has not
        // polished the visit order yet.
        Chromosome proposal = *candidate;
        for (AgentId a : {k, l}) {
            if (proposal.route(a).size() >= 3) {
                const OperatorMask own(a, a);
                OperatorResult improved = improve_2opt(proposal, own, cm, mds.protocol_rng);
                proposal = std::move(improved.child);
            }
        }
        candidate_cost = evaluate_cost(proposal, cm);

        // Worthwhile means beating what both agents can already do on their
        // own: the personal-deme champions of the current allocation, which
        // are exactly the routes step 5 would commit without an exchange.
        const double current =
            route_cost(best(mds.deme_sets[static_cast<std::size_t>(k)].deme(k).pop, cm).route(k),
                       k, cm) +
            route_cost(best(mds.deme_sets[static_cast<std::size_t>(l)].deme(l).pop, cm).route(l),
                       l, cm);
        if (candidate_cost >= current - kWorthwhileEps) {
            continue;
        }

        std::set<TaskId> new_k(proposal.route(k).begin(), proposal.route(k).end());
        std::set<TaskId> new_l(proposal.route(l).begin(), proposal.route(l).end());
        if (new_k == mds.allocation[static_cast<std::size_t>(k)]) {
            // Better routing with the same split is not an exchange; the
            // personal demes carry routing improvements on their own.
            continue;
        }

        ExchangeRecord record;
        record.step = state.step;
        record.pair = {k, l};
        for (TaskId t : new_k) {
            if (mds.allocation[static_cast<std::size_t>(l)].count(t) != 0) {
                record.to_first.push_back(t);
            }
        }
        for (TaskId t : new_l) {
            if (mds.allocation[static_cast<std::size_t>(k)].count(t) != 0) {
                record.to_second.push_back(t);
            }
        }
        record.cost_before = current;
        record.cost_after = candidate_cost;

        // Commit: both agents' truth and views change now, and their demes
        // are reconciled immediately so route selection right after the
        // negotiation sees consistent personal demes.
        const Chromosome adopted = std::move(proposal);
        mds.allocation[static_cast<std::size_t>(k)] = new_k;
        mds.allocation[static_cast<std::size_t>(l)] = new_l;
        for (AgentId agent : {k, l}) {
            AllocationView& view = mds.views[static_cast<std::size_t>(agent)];
            view.allocation[static_cast<std::size_t>(k)] = new_k;
            view.allocation[static_cast<std::size_t>(l)] = new_l;
            reconcile_agent_demes(mds, agent, cm);
        }

        inject_individual(mds.deme_sets[static_cast<std::size_t>(k)].deme(l).pop, adopted, cm);
        inject_individual(mds.deme_sets[static_cast<std::size_t>(l)].deme(k).pop, adopted, cm);
        Chromosome own_k(adopted.agent_count());
        own_k.set_route(k, adopted.route(k));
        inject_individual(mds.deme_sets[static_cast<std::size_t>(k)].deme(k).pop, own_k, cm);
        Chromosome own_l(adopted.agent_count());
        own_l.set_route(l, adopted.route(l));
        inject_individual(mds.deme_sets[static_cast<std::size_t>(l)].deme(l).pop, own_l, cm);

        traded[static_cast<std::size_t>(k)] = true;
        traded[static_cast<std::size_t>(l)] = true;
        records.push_back(std::move(record));
    }
    return records;
}

Route best_route(AgentId k, const MultiDemicState& mds, const CostMatrix& cm) {
    const Population& personal = mds.deme_sets[static_cast<std::size_t>(k)].deme(k).pop;
    const Chromosome& champion = best(personal, cm);
    const Route& route = champion.route(k);

    const std::set<TaskId> as_set(route.begin(), route.end());
    if (as_set != mds.allocation[static_cast<std::size_t>(k)] ||
        as_set.size() != route.size()) {
        throw StructuralError("personal deme of agent " + std::to_string(k) +
                              " is out of step with its committed allocation");
    }
    return route;
}

ExchangeRoundResult exchange_round(MultiDemicState& mds, const ProblemState& state,
                                   const CommsConfig& comms) {
    ExchangeRoundResult result;
    refresh_active_flags(mds, state, comms);
    result.feasible = feasible_exchanges(state, comms);
    knowledge_update(mds, state, result.feasible);
    migrate(mds, state, result.feasible);
    result.records = negotiate_exchanges(mds, state, result.feasible);
    for (std::size_t k = 0; k < mds.agent_count(); ++k) {
        mds.routes[k] = best_route(static_cast<AgentId>(k), mds, state.cost_matrix);
    }
    knowledge_update(mds, state, result.feasible);
    return result;
}

long evolve_active_demes(MultiDemicState& mds, const ProblemState& state) {
    long evolved = 0;
    for (DemeSet& set : mds.deme_sets) {
        for (Deme& deme : set.demes) {
            if (!deme.active) {
                continue;
            }
            const OperatorMask mask(set.owner, deme.paired);
            evolve(deme.pop, mds.cfg.generations_per_step, mds.cfg, mask, state.cost_matrix,
                   deme.rng);
            evolved += mds.cfg.generations_per_step;
        }
    }
    return evolved;
}

void note_completion(MultiDemicState& mds, AgentId agent, TaskId task) {
    auto& owned = mds.allocation[static_cast<std::size_t>(agent)];
    if (owned.erase(task) == 0) {
        throw StructuralError("agent " + std::to_string(agent) + " completed task " +
                              std::to_string(task) + " it does not own");
    }
    AllocationView& view = mds.views[static_cast<std::size_t>(agent)];
    view.completed.insert(task);
    for (std::set<TaskId>& alloc : view.allocation) {
        alloc.erase(task);
    }

    Route& route = mds.routes[static_cast<std::size_t>(agent)];
    route.erase(std::remove(route.begin(), route.end(), task), route.end());

    DemeSet& set = mds.deme_sets[static_cast<std::size_t>(agent)];
    for (Deme& deme : set.demes) {
        if (!deme.active) {
            continue;  // frozen demes catch up at their next knowledge update
        }
        for (Chromosome& member : deme.pop.members) {
            for (AgentId a : {set.owner, deme.paired}) {
                const Route& r = member.route(a);
                if (std::find(r.begin(), r.end(), task) != r.end()) {
                    Route& mr = member.mutable_route(a);
                    mr.erase(std::remove(mr.begin(), mr.end(), task), mr.end());
                }
                if (deme.paired == set.owner) {
                    break;
                }
            }
        }
    }
}

void note_arrival(MultiDemicState& mds, const ProblemState& state, TaskId task,
                  AgentId receiver) {
    (void)state;
    mds.allocation[static_cast<std::size_t>(receiver)].insert(task);
    mds.views[static_cast<std::size_t>(receiver)]
        .allocation[static_cast<std::size_t>(receiver)]
        .insert(task);
    mds.routes[static_cast<std::size_t>(receiver)].push_back(task);

    DemeSet& set = mds.deme_sets[static_cast<std::size_t>(receiver)];
    for (Deme& deme : set.demes) {
        if (!deme.active) {
            continue;
        }
        for (Chromosome& member : deme.pop.members) {
            member.mutable_route(receiver).push_back(task);
        }
    }
}

}  // namespace matsp
