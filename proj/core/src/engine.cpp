#include "matsp/engine.hpp"

#include <algorithm>
#include <limits>

namespace matsp {

EvolutionConfig EvolutionConfig::ea_defaults() {
    EvolutionConfig cfg;
    cfg.mu = 50;
    cfg.lambda = 25;
    return cfg;
}

EvolutionConfig EvolutionConfig::mdea_defaults() {
    EvolutionConfig cfg;
    cfg.mu = 20;
    cfg.lambda = 10;
    return cfg;
}

std::vector<Route> nearest_agent_allocation(const ProblemState& state) {
    std::vector<Route> allocation(state.agent_count());
    for (TaskId t : state.active) {
        AgentId nearest = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < state.agent_count(); ++a) {
            const double d = state.cost_matrix.agent_to_task(static_cast<AgentId>(a), t);
            if (d < best) {
                best = d;
                nearest = static_cast<AgentId>(a);
            }
        }
        allocation[static_cast<std::size_t>(nearest)].push_back(t);
    }
    return allocation;
}

Population population_from_allocation(const std::vector<Route>& allocation, int mu,
                                      RngStream& rng) {
    Population pop;
    pop.members.reserve(static_cast<std::size_t>(mu));
    pop.members.emplace_back(allocation);
    for (int i = 1; i < mu; ++i) {
        Chromosome member(allocation);
        for (std::size_t a = 0; a < member.agent_count(); ++a) {
            rng.shuffle(member.mutable_route(static_cast<AgentId>(a)));
        }
        pop.members.push_back(std::move(member));
    }
    return pop;
}

Population init_population(const ProblemState& state, const EvolutionConfig& cfg, RngStream& rng) {
    return population_from_allocation(nearest_agent_allocation(state), cfg.mu, rng);
}

namespace {

constexpr int kMaxRedraws = 50;

const Chromosome& draw_parent(const Population& pop, RngStream& rng) {
    return pop.members[rng.pick_index(pop.members.size())];
}

}  // namespace

std::vector<Chromosome> reproduce(const Population& pop, const EvolutionConfig& cfg,
                                  const OperatorMask& mask, const CostMatrix& cm, RngStream& rng,
                                  ReproduceStats* stats) {
    std::vector<Chromosome> offspring;
    offspring.reserve(static_cast<std::size_t>(cfg.lambda));

    while (offspring.size() < static_cast<std::size_t>(cfg.lambda)) {
        bool produced = false;
        for (int attempt = 0; attempt < kMaxRedraws && !produced; ++attempt) {
            const double u = rng.uniform_real();
            if (u < cfg.p_crossover) {
                if (stats) {
                    ++stats->crossover_draws;
                }
                const Chromosome& p1 = draw_parent(pop, rng);
                const Chromosome& p2 = draw_parent(pop, rng);
                CrossoverResult r = rng.bernoulli(0.5) ? crossover_sbx(p1, p2, mask, cm, rng)
                                                       : crossover_rbx(p1, p2, mask, cm, rng);
                if (r.changed) {
                    offspring.push_back(std::move(r.child1));
                    if (offspring.size() < static_cast<std::size_t>(cfg.lambda)) {
                        offspring.push_back(std::move(r.child2));
                    }
                    produced = true;
                }
            } else if (u < cfg.p_crossover + cfg.p_mutation) {
                if (stats) {
                    ++stats->mutation_draws;
                }
                const Chromosome& p = draw_parent(pop, rng);
                OperatorResult r =
                    rng.bernoulli(0.5) ? mutate_swap(p, mask, rng) : mutate_move(p, mask, rng);
                if (r.changed) {
                    offspring.push_back(std::move(r.child));
                    produced = true;
                }
            } else {
                if (stats) {
                    ++stats->improvement_draws;
                }
                const Chromosome& p = draw_parent(pop, rng);
                OperatorResult r = improve_2opt(p, mask, cm, rng);
                if (r.changed) {
                    offspring.push_back(std::move(r.child));
                    produced = true;
                }
            }
            if (!produced && stats) {
                ++stats->no_op_redraws;
            }
        }
        if (!produced) {
            // Nothing can alter this population (e.g. one lone task). Clone a
            // parent so the offspring count contract still holds.
            offspring.push_back(draw_parent(pop, rng));
        }
    }
    return offspring;
}

std::size_t best_index(const Population& pop, const CostMatrix& cm) {
    if (pop.members.empty()) {
        throw StructuralError("best() on empty population");
    }
    std::size_t best = 0;
    double best_cost = evaluate_cost(pop.members[0], cm);
    for (std::size_t i = 1; i < pop.members.size(); ++i) {
        const double c = evaluate_cost(pop.members[i], cm);
        if (c < best_cost) {
            best_cost = c;
            best = i;
        }
    }
    return best;
}

const Chromosome& best(const Population& pop, const CostMatrix& cm) {
    return pop.members[best_index(pop, cm)];
}

Population select_tournament(const Population& pop, std::vector<Chromosome> offspring,
                             const EvolutionConfig& cfg, const CostMatrix& cm, RngStream& rng) {
    std::vector<const Chromosome*> pool;
    pool.reserve(pop.members.size() + offspring.size());
    for (const Chromosome& c : pop.members) {
        pool.push_back(&c);
    }
    for (const Chromosome& c : offspring) {
        pool.push_back(&c);
    }

    std::vector<double> costs(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        costs[i] = evaluate_cost(*pool[i], cm);
    }

    std::size_t elite = 0;
    for (std::size_t i = 1; i < pool.size(); ++i) {
        if (costs[i] < costs[elite]) {
            elite = i;
        }
    }

    Population next;
    next.members.reserve(static_cast<std::size_t>(cfg.mu));
    next.members.push_back(*pool[elite]);

    const std::size_t batch =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(cfg.tournament_size, 1)),
                              pool.size());
    std::vector<std::size_t> indices(pool.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        indices[i] = i;
    }
    while (next.members.size() < static_cast<std::size_t>(cfg.mu)) {
        // Partial Fisher-Yates: the first `batch` entries become a uniform
        // sample without replacement.
        for (std::size_t d = 0; d < batch; ++d) {
            const std::size_t j = d + rng.pick_index(indices.size() - d);
            std::swap(indices[d], indices[j]);
        }
        std::size_t winner = indices[0];
        for (std::size_t d = 1; d < batch; ++d) {
            const std::size_t i = indices[d];
            if (costs[i] < costs[winner] || (costs[i] == costs[winner] && i < winner)) {
                winner = i;
            }
        }
        next.members.push_back(*pool[winner]);
    }
    return next;
}

void evolve(Population& pop, int generations, const EvolutionConfig& cfg, const OperatorMask& mask,
            const CostMatrix& cm, RngStream& rng, ReproduceStats* stats) {
    for (int g = 0; g < generations; ++g) {
        std::vector<Chromosome> offspring = reproduce(pop, cfg, mask, cm, rng, stats);
        pop = select_tournament(pop, std::move(offspring), cfg, cm, rng);
    }
}

}  // namespace matsp
