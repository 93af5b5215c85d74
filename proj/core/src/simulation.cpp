#include "matsp/simulation.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <stdexcept>

namespace matsp {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::ea:
            return "ea";
        case Algorithm::cmdea:
            return "cmdea";
        case Algorithm::dmdea:
            return "dmdea";
    }
    return "ea";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "ea") {
        return Algorithm::ea;
    }
    if (name == "cmdea") {
        return Algorithm::cmdea;
    }
    if (name == "dmdea") {
        return Algorithm::dmdea;
    }
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

TrialConfig TrialConfig::defaults_for(Algorithm a) {
    TrialConfig cfg;
    cfg.algorithm = a;
    switch (a) {
        case Algorithm::ea:
            cfg.evolution = EvolutionConfig::ea_defaults();
            break;
        case Algorithm::cmdea:
            cfg.evolution = EvolutionConfig::mdea_defaults();
            cfg.comms = CommsConfig::centralised();
            break;
        case Algorithm::dmdea:
            cfg.evolution = EvolutionConfig::mdea_defaults();
            cfg.comms = CommsConfig::decentralised();
            break;
    }
    return cfg;
}

Simulation::Simulation(const Scenario& scenario, const SimConfig& cfg) : cfg_(cfg) {
    state_.agents.reserve(scenario.agent_count());
    for (std::size_t a = 0; a < scenario.agent_count(); ++a) {
        state_.agents.push_back(AgentState{static_cast<AgentId>(a), scenario.agent_starts[a],
                                           cfg.agent_speed});
    }

    TaskId next_id = 0;
    for (const Point& p : scenario.initial_tasks) {
        state_.tasks.push_back(Task{next_id, p, TaskStatus::active, 0});
        state_.active.insert(next_id);
        ++next_id;
    }
    for (const TaskArrival& arrival : scenario.arrivals) {
        state_.tasks.push_back(Task{next_id, arrival.location, TaskStatus::pending,
                                    arrival.step});
        ++next_id;
    }
    total_tasks_ = static_cast<int>(scenario.total_task_count());
    max_steps_ = cfg.max_steps > 0 ? cfg.max_steps : 10 * std::max(total_tasks_, 1);
    state_.rebuild_matrix();
}

StepEvents Simulation::advance(const std::vector<Route>& routes) {
    StepEvents events;
    ++state_.step;

    // Move each agent straight toward its route head, stopping on arrival.
    for (std::size_t a = 0; a < state_.agents.size(); ++a) {
        if (routes[a].empty()) {
            continue;
        }
        const TaskId head = routes[a].front();
        const Task& target = state_.task(head);
        if (target.status != TaskStatus::active) {
            throw StructuralError("route of agent " + std::to_string(a) +
                                  " heads to inactive task " + std::to_string(head));
        }
        AgentState& agent = state_.agents[a];
        const double gap = distance(agent.position, target.location);
        if (gap <= agent.speed) {
            agent.position = target.location;
            events.distance_travelled += gap;
        } else {
            const double fraction = agent.speed / gap;
            agent.position.x += (target.location.x - agent.position.x) * fraction;
            agent.position.y += (target.location.y - agent.position.y) * fraction;
            events.distance_travelled += agent.speed;
        }
    }

    // An agent completes at most its own head-of-route task per step.
    for (std::size_t a = 0; a < state_.agents.size(); ++a) {
        if (routes[a].empty()) {
            continue;
        }
        const TaskId head = routes[a].front();
        Task& target = state_.task(head);
        if (distance(state_.agents[a].position, target.location) <= cfg_.completion_radius) {
            target.status = TaskStatus::completed;
            state_.active.erase(head);
            ++completed_count_;
            events.completed.push_back(CompletionEvent{static_cast<AgentId>(a), head});
        }
    }

    // Scheduled arrivals activate and go to the geographically closest agent.
    for (Task& t : state_.tasks) {
        if (t.status != TaskStatus::pending || t.arrival_step != state_.step) {
            continue;
        }
        t.status = TaskStatus::active;
        state_.active.insert(t.id);
        AgentId nearest = 0;
        double best = std::numeric_limits<double>::infinity();
        for (const AgentState& agent : state_.agents) {
            const double d = distance(agent.position, t.location);
            if (d < best) {
                best = d;
                nearest = agent.id;
            }
        }
        events.arrivals.push_back(ArrivalEvent{t.id, nearest});
    }

    state_.rebuild_matrix();
    return events;
}

namespace {

// Common face the trial loop drives; the EA and the multi-demic variants
// differ in evolution, exchange and how world events reach their populations.
class Solver {
public:
    virtual ~Solver() = default;
    virtual long evolve_step(const ProblemState& state) = 0;
    virtual ExchangeRoundResult exchange(const ProblemState& state) = 0;
    virtual const std::vector<Route>& routes() const = 0;
    virtual void apply_events(const ProblemState& state, const StepEvents& events) = 0;
    virtual const MultiDemicState* demic_state() const { return nullptr; }
};

class EaSolver : public Solver {
public:
    EaSolver(const ProblemState& state, const EvolutionConfig& cfg, RngStream rng)
        : cfg_(cfg), rng_(rng) {
        pop_ = init_population(state, cfg_, rng_);
        required_ = state.active;
        routes_ = best(pop_, state.cost_matrix).routes();
    }

    long evolve_step(const ProblemState& state) override {
        evolve(pop_, cfg_.generations_per_step, cfg_, OperatorMask{}, state.cost_matrix, rng_);
        return cfg_.generations_per_step;
    }

    ExchangeRoundResult exchange(const ProblemState& state) override {
        routes_ = best(pop_, state.cost_matrix).routes();
        return {};
    }

    const std::vector<Route>& routes() const override { return routes_; }

    void apply_events(const ProblemState& state, const StepEvents& events) override {
        for (const CompletionEvent& e : events.completed) {
            required_.erase(e.task);
            for (Chromosome& member : pop_.members) {
                for (std::size_t a = 0; a < member.agent_count(); ++a) {
                    const Route& r = member.route(static_cast<AgentId>(a));
                    if (std::find(r.begin(), r.end(), e.task) != r.end()) {
                        Route& mr = member.mutable_route(static_cast<AgentId>(a));
                        mr.erase(std::remove(mr.begin(), mr.end(), e.task), mr.end());
                        break;
                    }
                }
            }
            Route& own = routes_[static_cast<std::size_t>(e.agent)];
            own.erase(std::remove(own.begin(), own.end(), e.task), own.end());
        }
        for (const ArrivalEvent& e : events.arrivals) {
            required_.insert(e.task);
            for (Chromosome& member : pop_.members) {
                member.mutable_route(e.assigned).push_back(e.task);
            }
            routes_[static_cast<std::size_t>(e.assigned)].push_back(e.task);
        }
        (void)state;
    }

private:
    EvolutionConfig cfg_;
    RngStream rng_;
    Population pop_;
    std::set<TaskId> required_;
    std::vector<Route> routes_;
};

class MultiDemicSolver : public Solver {
public:
    MultiDemicSolver(const ProblemState& state, const EvolutionConfig& cfg,
                     const CommsConfig& comms, RngStream rng)
        : comms_(comms), rng_(rng) {
        mds_ = build_deme_sets(state, cfg, comms_, rng_);
    }

    long evolve_step(const ProblemState& state) override {
        return evolve_active_demes(mds_, state);
    }

    ExchangeRoundResult exchange(const ProblemState& state) override {
        return exchange_round(mds_, state, comms_);
    }

    const std::vector<Route>& routes() const override { return mds_.routes; }

    void apply_events(const ProblemState& state, const StepEvents& events) override {
        for (const CompletionEvent& e : events.completed) {
            note_completion(mds_, e.agent, e.task);
        }
        for (const ArrivalEvent& e : events.arrivals) {
            note_arrival(mds_, state, e.task, e.assigned);
        }
    }

    const MultiDemicState* demic_state() const override { return &mds_; }

private:
    CommsConfig comms_;
    RngStream rng_;
    MultiDemicState mds_;
};

std::unique_ptr<Solver> make_solver(Algorithm algorithm, const ProblemState& state,
                                    const TrialConfig& cfg, RngStream rng) {
    if (algorithm == Algorithm::ea) {
        return std::make_unique<EaSolver>(state, cfg.evolution, rng);
    }
    const CommsConfig comms =
        algorithm == Algorithm::cmdea ? CommsConfig::centralised() : cfg.comms;
    return std::make_unique<MultiDemicSolver>(state, cfg.evolution, comms, rng);
}

}  // namespace

TrialTrace run_trial(const Scenario& scenario, const TrialConfig& cfg, TrialObserver* observer) {
    Simulation sim(scenario, cfg.sim);

    TrialTrace trace;
    trace.scenario_seed = scenario.seed;
    trace.algorithm = cfg.algorithm;
    trace.n_agents = static_cast<int>(scenario.agent_count());
    trace.n_tasks_initial = static_cast<int>(scenario.initial_task_count());
    trace.n_tasks_total = static_cast<int>(scenario.total_task_count());
    const CommsConfig comms =
        cfg.algorithm == Algorithm::cmdea ? CommsConfig::centralised() : cfg.comms;
    trace.comm_radius =
        cfg.algorithm == Algorithm::ea ? std::numeric_limits<double>::quiet_NaN()
                                       : comms.comm_radius;
    trace.consideration_margin =
        cfg.algorithm == Algorithm::ea ? std::numeric_limits<double>::quiet_NaN()
                                       : comms.consideration_margin;
    trace.solver_seed = cfg.solver_seed;
    trace.agent_starts = scenario.agent_starts;

    std::unique_ptr<Solver> solver =
        make_solver(cfg.algorithm, sim.state(), cfg, RngStream(cfg.solver_seed));

    while (!sim.all_completed() && sim.state().step < sim.max_steps()) {
        StepRecord record;
        record.demes_evolved = solver->evolve_step(sim.state());

        const ExchangeRoundResult round = solver->exchange(sim.state());
        record.exchanges = round.records;
        if (observer != nullptr) {
            observer->on_exchange_round(sim.state(), solver->demic_state(), round.feasible,
                                        round.records);
        }

        record.routes = solver->routes();
        double committed = 0.0;
        for (std::size_t a = 0; a < record.routes.size(); ++a) {
            committed +=
                route_cost(record.routes[a], static_cast<AgentId>(a), sim.state().cost_matrix);
        }
        record.committed_cost = committed;

        const StepEvents events = sim.advance(record.routes);
        solver->apply_events(sim.state(), events);

        record.step = sim.state().step;
        record.completions = events.completed;
        record.arrivals = events.arrivals;
        record.distance_travelled = events.distance_travelled;
        record.positions.reserve(sim.state().agents.size());
        for (const AgentState& agent : sim.state().agents) {
            record.positions.push_back(agent.position);
        }
        if (observer != nullptr) {
            observer->on_step(sim.state(), record);
        }
        trace.steps.push_back(std::move(record));
    }

    trace.completed = sim.all_completed();
    trace.tasks = sim.state().tasks;
    return trace;
}

}  // namespace matsp
