#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matsp/demes.hpp"
#include "matsp/engine.hpp"
#include "matsp/problem_state.hpp"
#include "matsp/scenario.hpp"

namespace matsp {

enum class Algorithm { ea, cmdea, dmdea };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

struct SimConfig {
    double agent_speed = 5.0;       // metres per time-step
    double completion_radius = 1.0; // metres; assigned agent within this completes the task
    int max_steps = 0;              // 0 -> 10 x total task count
};

struct CompletionEvent {
    AgentId agent = 0;
    TaskId task = 0;
};

struct ArrivalEvent {
    TaskId task = 0;
    AgentId assigned = 0;
};

struct StepEvents {
    std::vector<CompletionEvent> completed;
    std::vector<ArrivalEvent> arrivals;
    double distance_travelled = 0.0;
};

// The world loop: holds the authoritative ProblemState and advances it one
// time-step at a time. Movement, completion, scheduled arrival and the
// distance-matrix rebuild happen here; deciding routes is the solvers' job.
class Simulation {
public:
    Simulation(const Scenario& scenario, const SimConfig& cfg);

    const ProblemState& state() const { return state_; }
    ProblemState& state() { return state_; }

    // One update: agents move toward their route heads, head tasks within
    // the completion radius complete, due arrivals activate and are assigned
    // to the nearest agent, and the matrix is rebuilt.
    StepEvents advance(const std::vector<Route>& routes);

    bool all_completed() const { return completed_count_ == total_tasks_; }
    int total_tasks() const { return total_tasks_; }
    int max_steps() const { return max_steps_; }

private:
    ProblemState state_;
    SimConfig cfg_;
    int total_tasks_ = 0;
    int completed_count_ = 0;
    int max_steps_ = 0;
};

// Per-step snapshot. Routes and committed cost are captured right after the
// exchange (what the agents set out to follow); positions are captured after
// the movement that followed.
struct StepRecord {
    int step = 0;
    std::vector<Point> positions;
    std::vector<Route> routes;
    std::vector<CompletionEvent> completions;
    std::vector<ArrivalEvent> arrivals;
    std::vector<ExchangeRecord> exchanges;
    double committed_cost = 0.0;
    long demes_evolved = 0;
    double distance_travelled = 0.0;
};

struct TrialTrace {
    std::uint64_t scenario_seed = 0;
    Algorithm algorithm = Algorithm::ea;
    int n_agents = 0;
    int n_tasks_initial = 0;
    int n_tasks_total = 0;
    double comm_radius = 0.0;          // infinity for cmdea; unused for ea
    double consideration_margin = 0.0;
    std::uint64_t solver_seed = 0;
    std::vector<Point> agent_starts;
    std::vector<Task> tasks;           // final records: id, location, arrival step
    std::vector<StepRecord> steps;
    bool completed = false;
};

// Hooks for auditing a running trial (protocol safety checks, statistics).
// The multi-demic state pointer is null for the single-population EA.
class TrialObserver {
public:
    virtual ~TrialObserver() = default;
    virtual void on_exchange_round(const ProblemState& state, const MultiDemicState* mds,
                                   const std::vector<AgentPair>& feasible,
                                   const std::vector<ExchangeRecord>& records) {
        (void)state;
        (void)mds;
        (void)feasible;
        (void)records;
    }
    virtual void on_step(const ProblemState& state, const StepRecord& record) {
        (void)state;
        (void)record;
    }
};

struct TrialConfig {
    Algorithm algorithm = Algorithm::dmdea;
    EvolutionConfig evolution = EvolutionConfig::mdea_defaults();
    CommsConfig comms = CommsConfig::decentralised();
    SimConfig sim;
    std::uint64_t solver_seed = 1;

    // Published parameter sets: EA mu 50 / lambda 25, multi-demic 20 / 10,
    // five generations per step, 75 m radius and 10 m margin.
    static TrialConfig defaults_for(Algorithm a);
};

// The full dynamic loop: evolve for generations_per_step, run the exchange
// (best-selection for the EA), advance the world, feed events back to the
// solver; repeats until every task is completed or max_steps is hit.
TrialTrace run_trial(const Scenario& scenario, const TrialConfig& cfg,
                     TrialObserver* observer = nullptr);

}  // namespace matsp
