#include "matsp/operators.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace matsp {

namespace {

constexpr double kImprovementEps = 1e-9;

std::vector<AgentId> filter_by_route(const std::vector<AgentId>& agents, const Chromosome& x,
                                     std::size_t min_len) {
    std::vector<AgentId> out;
    for (AgentId a : agents) {
        if (x.route(a).size() >= min_len) {
            out.push_back(a);
        }
    }
    return out;
}

}  // namespace

double insertion_delta(const Route& r, AgentId a, TaskId t, std::size_t pos,
                       const CostMatrix& cm) {
    const double to_t = (pos == 0) ? cm.agent_to_task(a, t) : cm.task_to_task(r[pos - 1], t);
    if (pos == r.size()) {
        return to_t;  // appended task closes for free
    }
    const double old_leg = (pos == 0) ? cm.agent_to_task(a, r[0]) : cm.task_to_task(r[pos - 1], r[pos]);
    return to_t + cm.task_to_task(t, r[pos]) - old_leg;
}

void cheapest_insert(Route& r, AgentId a, TaskId t, const CostMatrix& cm) {
    std::size_t best_pos = 0;
    double best_delta = std::numeric_limits<double>::infinity();
    for (std::size_t pos = 0; pos <= r.size(); ++pos) {
        const double delta = insertion_delta(r, a, t, pos, cm);
        if (delta < best_delta) {
            best_delta = delta;
            best_pos = pos;
        }
    }
    r.insert(r.begin() + static_cast<std::ptrdiff_t>(best_pos), t);
}

std::vector<AgentId> OperatorMask::eligible_agents(std::size_t n_agents) const {
    std::vector<AgentId> out;
    if (!pair_) {
        out.reserve(n_agents);
        for (std::size_t a = 0; a < n_agents; ++a) {
            out.push_back(static_cast<AgentId>(a));
        }
        return out;
    }
    out.push_back(std::min(pair_->first, pair_->second));
    if (pair_->second != pair_->first) {
        out.push_back(std::max(pair_->first, pair_->second));
    }
    return out;
}

OperatorResult mutate_swap(const Chromosome& x, const OperatorMask& mask, RngStream& rng) {
    const std::vector<AgentId> candidates =
        filter_by_route(mask.eligible_agents(x.agent_count()), x, 2);
    if (candidates.empty()) {
        return {x, false};
    }
    Chromosome child = x;
    const AgentId a = candidates[rng.pick_index(candidates.size())];
    Route& r = child.mutable_route(a);
    const std::size_t pos = rng.pick_index(r.size() - 1);
    std::swap(r[pos], r[pos + 1]);
    return {std::move(child), true};
}

OperatorResult mutate_move(const Chromosome& x, const OperatorMask& mask, RngStream& rng) {
    const std::vector<AgentId> eligible = mask.eligible_agents(x.agent_count());
    if (eligible.size() < 2) {
        return {x, false};  // mask pins a single agent, nowhere to move to
    }
    const std::vector<AgentId> donors = filter_by_route(eligible, x, 1);
    if (donors.empty()) {
        return {x, false};
    }
    const AgentId donor = donors[rng.pick_index(donors.size())];
    std::vector<AgentId> recipients;
    for (AgentId a : eligible) {
        if (a != donor) {
            recipients.push_back(a);
        }
    }
    const AgentId recipient = recipients[rng.pick_index(recipients.size())];

    Chromosome child = x;
    Route& from = child.mutable_route(donor);
    const std::size_t task_pos = rng.pick_index(from.size());
    const TaskId task = from[task_pos];
    from.erase(from.begin() + static_cast<std::ptrdiff_t>(task_pos));

    Route& to = child.mutable_route(recipient);
    const std::size_t insert_pos = rng.pick_index(to.size() + 1);
    to.insert(to.begin() + static_cast<std::ptrdiff_t>(insert_pos), task);
    return {std::move(child), true};
}

Chromosome repair(Chromosome x, const std::set<TaskId>& required, const OperatorMask& mask,
                  const CostMatrix& cm) {
    const std::vector<AgentId> eligible = mask.eligible_agents(x.agent_count());

    // Tasks held by routes the mask forbids touching are fixed points of the
    // repair; the operators cannot have put duplicates there.
    std::set<TaskId> seen;
    for (std::size_t a = 0; a < x.agent_count(); ++a) {
        if (!mask.eligible(static_cast<AgentId>(a))) {
            const Route& r = x.route(static_cast<AgentId>(a));
            seen.insert(r.begin(), r.end());
        }
    }

    // First occurrence wins, scanning eligible routes in agent order; foreign
    // tasks are dropped outright.
    for (AgentId a : eligible) {
        const Route& r = x.route(a);
        Route kept;
        kept.reserve(r.size());
        for (TaskId t : r) {
            if (required.count(t) != 0 && seen.insert(t).second) {
                kept.push_back(t);
            }
        }
        if (kept.size() != r.size()) {
            x.set_route(a, std::move(kept));
        }
    }

    // Re-insert anything unallocated at the cheapest position over all
    // eligible routes.
    for (TaskId t : required) {
        if (seen.count(t) != 0) {
            continue;
        }
        AgentId best_agent = eligible.front();
        std::size_t best_pos = 0;
        double best_delta = std::numeric_limits<double>::infinity();
        for (AgentId a : eligible) {
            const Route& r = x.route(a);
            for (std::size_t pos = 0; pos <= r.size(); ++pos) {
                const double delta = insertion_delta(r, a, t, pos, cm);
                if (delta < best_delta) {
                    best_delta = delta;
                    best_agent = a;
                    best_pos = pos;
                }
            }
        }
        Route& r = x.mutable_route(best_agent);
        r.insert(r.begin() + static_cast<std::ptrdiff_t>(best_pos), t);
    }
    return x;
}

namespace {

CrossoverResult finish_crossover(const Chromosome& p1, const Chromosome& p2, Chromosome c1,
                                 Chromosome c2, const OperatorMask& mask, const CostMatrix& cm) {
    const std::set<TaskId> universe = p1.task_set();
    CrossoverResult out;
    out.child1 = repair(std::move(c1), universe, mask, cm);
    out.child2 = repair(std::move(c2), universe, mask, cm);
    out.changed = out.child1 != p1 || out.child2 != p2;
    return out;
}

}  // namespace

CrossoverResult crossover_sbx(const Chromosome& p1, const Chromosome& p2, const OperatorMask& mask,
                              const CostMatrix& cm, RngStream& rng) {
    const std::vector<AgentId> eligible = mask.eligible_agents(p1.agent_count());
    const AgentId a = eligible[rng.pick_index(eligible.size())];
    const Route& r1 = p1.route(a);
    const Route& r2 = p2.route(a);
    const auto b1 = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(r1.size())));
    const auto b2 = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(r2.size())));

    Chromosome c1 = p1;
    Route spliced1(r1.begin(), r1.begin() + static_cast<std::ptrdiff_t>(b1));
    spliced1.insert(spliced1.end(), r2.begin() + static_cast<std::ptrdiff_t>(b2), r2.end());
    c1.set_route(a, std::move(spliced1));

    Chromosome c2 = p2;
    Route spliced2(r2.begin(), r2.begin() + static_cast<std::ptrdiff_t>(b2));
    spliced2.insert(spliced2.end(), r1.begin() + static_cast<std::ptrdiff_t>(b1), r1.end());
    c2.set_route(a, std::move(spliced2));

    return finish_crossover(p1, p2, std::move(c1), std::move(c2), mask, cm);
}

CrossoverResult crossover_rbx(const Chromosome& p1, const Chromosome& p2, const OperatorMask& mask,
                              const CostMatrix& cm, RngStream& rng) {
    const std::vector<AgentId> eligible = mask.eligible_agents(p1.agent_count());
    const AgentId a = eligible[rng.pick_index(eligible.size())];

    Chromosome c1 = p1;
    c1.set_route(a, p2.route(a));
    Chromosome c2 = p2;
    c2.set_route(a, p1.route(a));

    return finish_crossover(p1, p2, std::move(c1), std::move(c2), mask, cm);
}

OperatorResult improve_2opt(const Chromosome& x, const OperatorMask& mask, const CostMatrix& cm,
                            RngStream& rng) {
    const std::vector<AgentId> candidates =
        filter_by_route(mask.eligible_agents(x.agent_count()), x, 3);
    if (candidates.empty()) {
        return {x, false};
    }
    const AgentId a = candidates[rng.pick_index(candidates.size())];

    Chromosome child = x;
    Route& r = child.mutable_route(a);
    const std::size_t n = r.size();
    bool any_applied = false;

    // Reversing r[i..j] replaces the edge into r[i] and the edge out of r[j];
    // the interior legs are task-task distances and therefore symmetric. The
    // edge into position 0 comes from the agent dummy, and there is no edge
    // out of the last position.
    auto leg_into = [&](std::size_t i, TaskId t) {
        return (i == 0) ? cm.agent_to_task(a, t) : cm.task_to_task(r[i - 1], t);
    };
    for (int sweep = 0; sweep < 50; ++sweep) {
        bool improved = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double delta = leg_into(i, r[j]) - leg_into(i, r[i]);
                if (j + 1 < n) {
                    delta += cm.task_to_task(r[i], r[j + 1]) - cm.task_to_task(r[j], r[j + 1]);
                }
                if (delta < -kImprovementEps) {
                    std::reverse(r.begin() + static_cast<std::ptrdiff_t>(i),
                                 r.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                    improved = true;
                    any_applied = true;
                }
            }
        }
        if (!improved) {
            break;
        }
    }
    if (!any_applied) {
        return {x, false};
    }
    return {std::move(child), true};
}

}  // namespace matsp
