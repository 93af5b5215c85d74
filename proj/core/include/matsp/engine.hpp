#pragma once

#include <vector>

#include "matsp/chromosome.hpp"
#include "matsp/operators.hpp"
#include "matsp/problem_state.hpp"
#include "matsp/rng.hpp"

namespace matsp {

struct EvolutionConfig {
    int mu = 20;                     // population size
    int lambda = 10;                 // offspring per generation
    int generations_per_step = 5;    // generations between world updates
    double p_crossover = 0.4;
    double p_mutation = 0.4;
    double p_improvement = 0.2;
    int tournament_size = 3;
    int n_migrate = 2;               // individuals copied per direction per exchange

    // Published defaults: a large single population for the plain EA, small
    // per-deme populations for the multi-demic variants.
    static EvolutionConfig ea_defaults();
    static EvolutionConfig mdea_defaults();
};

struct Population {
    std::vector<Chromosome> members;

    std::size_t size() const { return members.size(); }
};

// mu copies of the nearest-agent allocation. Member 0 keeps plain insertion
// order; every other member gets independently shuffled route orders so
// selection has something to work with from generation one. Ties in the
// nearest-agent rule go to the lower agent id.
Population init_population(const ProblemState& state, const EvolutionConfig& cfg, RngStream& rng);

// Same construction from an explicit per-agent allocation (the multi-demic
// layer seeds pair demes from believed allocations).
Population population_from_allocation(const std::vector<Route>& allocation, int mu,
                                      RngStream& rng);

// Nearest-agent assignment of the state's active tasks, in ascending task id
// order, using the state's cost matrix.
std::vector<Route> nearest_agent_allocation(const ProblemState& state);

struct ReproduceStats {
    long crossover_draws = 0;
    long mutation_draws = 0;
    long improvement_draws = 0;
    long no_op_redraws = 0;
};

// Exactly lambda offspring. Each slot draws an operator class with the
// configured probabilities, a uniform operator within the class, and parents
// uniformly with replacement; a crossover fills two slots when room remains.
// No-op outcomes are redrawn (bounded) so the offspring count always holds.
std::vector<Chromosome> reproduce(const Population& pop, const EvolutionConfig& cfg,
                                  const OperatorMask& mask, const CostMatrix& cm, RngStream& rng,
                                  ReproduceStats* stats = nullptr);

// Tournament selection over population plus offspring, back down to mu
// members. Slot 0 is reserved for the pool's best individual (elitism of
// one); every other slot is the winner of a tournament_size batch drawn
// without replacement.
Population select_tournament(const Population& pop, std::vector<Chromosome> offspring,
                             const EvolutionConfig& cfg, const CostMatrix& cm, RngStream& rng);

std::size_t best_index(const Population& pop, const CostMatrix& cm);
const Chromosome& best(const Population& pop, const CostMatrix& cm);

// generations x (reproduce, select).
void evolve(Population& pop, int generations, const EvolutionConfig& cfg, const OperatorMask& mask,
            const CostMatrix& cm, RngStream& rng, ReproduceStats* stats = nullptr);

}  // namespace matsp
