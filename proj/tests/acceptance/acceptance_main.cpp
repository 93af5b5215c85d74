// Acceptance suite: nine system-level criteria, one pass/fail line each.
// Run with no arguments for the full battery or `--criterion N` for one.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "matsp/demes.hpp"
#include "matsp/engine.hpp"
#include "matsp/metrics.hpp"
#include "matsp/operators.hpp"
#include "matsp/oracle.hpp"
#include "matsp/parallel.hpp"
#include "matsp/scenario.hpp"
#include "matsp/simulation.hpp"
#include "matsp/trace_io.hpp"

namespace {

using namespace matsp;

constexpr std::uint64_t kSeedBase = 424242;

struct CriterionResult {
    bool pass = true;
    std::string detail;
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string fmt(const char* format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof(buffer), format, args);
    va_end(args);
    return buffer;
}

// ---------------------------------------------------------------- helpers

ProblemState static_state(RngStream& rng, int n_agents, int n_tasks, double arena = 200.0) {
    ProblemState state;
    for (int a = 0; a < n_agents; ++a) {
        state.agents.push_back(AgentState{a, {rng.uniform_real() * arena,
                                              rng.uniform_real() * arena}, 5.0});
    }
    for (int t = 0; t < n_tasks; ++t) {
        state.tasks.push_back(Task{t, {rng.uniform_real() * arena, rng.uniform_real() * arena},
                                   TaskStatus::active, 0});
        state.active.insert(t);
    }
    state.rebuild_matrix();
    return state;
}

Chromosome random_chromosome(const ProblemState& state, RngStream& rng) {
    Chromosome x(state.agent_count());
    for (TaskId t : state.active) {
        x.mutable_route(static_cast<AgentId>(rng.pick_index(state.agent_count()))).push_back(t);
    }
    for (std::size_t a = 0; a < x.agent_count(); ++a) {
        rng.shuffle(x.mutable_route(static_cast<AgentId>(a)));
    }
    return x;
}

bool mask_respected(const Chromosome& before, const Chromosome& after,
                    const OperatorMask& mask) {
    for (std::size_t a = 0; a < before.agent_count(); ++a) {
        if (!mask.eligible(static_cast<AgentId>(a)) &&
            before.route(static_cast<AgentId>(a)) != after.route(static_cast<AgentId>(a))) {
            return false;
        }
    }
    return true;
}

// Two-sided Mann-Whitney U via the tie-corrected normal approximation.
double mann_whitney_p(const std::vector<double>& xs, const std::vector<double>& ys) {
    struct Tagged {
        double value;
        bool from_x;
    };
    std::vector<Tagged> pooled;
    for (double v : xs) {
        pooled.push_back({v, true});
    }
    for (double v : ys) {
        pooled.push_back({v, false});
    }
    std::sort(pooled.begin(), pooled.end(),
              [](const Tagged& a, const Tagged& b) { return a.value < b.value; });

    const double n1 = static_cast<double>(xs.size());
    const double n2 = static_cast<double>(ys.size());
    const double n = n1 + n2;
    double rank_sum_x = 0.0;
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].value == pooled[i].value) {
            ++j;
        }
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        const auto ties = static_cast<double>(j - i);
        tie_term += ties * ties * ties - ties;
        for (std::size_t k = i; k < j; ++k) {
            if (pooled[k].from_x) {
                rank_sum_x += avg_rank;
            }
        }
        i = j;
    }
    const double u = rank_sum_x - n1 * (n1 + 1) / 2.0;
    const double mean = n1 * n2 / 2.0;
    const double variance = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)));
    if (variance <= 0.0) {
        return 1.0;  // complete ties: the samples are indistinguishable
    }
    double z = u - mean;
    z -= (z > 0 ? 0.5 : (z < 0 ? -0.5 : 0.0));  // continuity correction
    z /= std::sqrt(variance);
    return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

std::vector<double> total_distances(const std::vector<TrialReport>& reports) {
    std::vector<double> out;
    out.reserve(reports.size());
    for (const TrialReport& r : reports) {
        out.push_back(r.total_distance);
    }
    return out;
}

std::vector<TrialReport> run_suite(const std::vector<Scenario>& scenarios, Algorithm alg,
                                   double radius, std::vector<TrialTrace>* traces = nullptr) {
    std::vector<TrialReport> reports(scenarios.size());
    if (traces != nullptr) {
        traces->resize(scenarios.size());
    }
    parallel_for(scenarios.size(), default_jobs(), [&](std::size_t i) {
        TrialConfig cfg = TrialConfig::defaults_for(alg);
        if (alg == Algorithm::dmdea) {
            cfg.comms.comm_radius = radius;
        }
        cfg.sim.max_steps = 2000;  // let stragglers finish; metrics need full tours
        cfg.solver_seed = RngStream(scenarios[i].seed).derive(77).next_u64();
        TrialTrace trace = run_trial(scenarios[i], cfg);
        reports[i] = make_report(trace);
        if (traces != nullptr) {
            (*traces)[i] = std::move(trace);
        }
    });
    return reports;
}

// ---------------------------------------------------------------- criteria

// C1: 1000 randomized invocations per operator on instances up to 3 agents
// and 10 tasks; every output validates and respects its mask.
CriterionResult criterion_1() {
    Timer timer;
    long failures = 0;
    long invocations = 0;
    RngStream rng(RngStream(kSeedBase).derive(1).next_u64());

    for (int i = 0; i < 1000; ++i) {
        const int n_agents = 1 + static_cast<int>(rng.pick_index(3));
        const int n_tasks = 1 + static_cast<int>(rng.pick_index(10));
        const ProblemState state = static_state(rng, n_agents, n_tasks);
        const Chromosome p1 = random_chromosome(state, rng);
        const Chromosome p2 = random_chromosome(state, rng);

        OperatorMask mask;  // every third instance runs unmasked
        if (i % 3 != 0) {
            const auto k = static_cast<AgentId>(rng.pick_index(n_agents));
            const auto l = static_cast<AgentId>(rng.pick_index(n_agents));
            mask = OperatorMask(k, l);
        }

        const auto check = [&](const Chromosome& out) {
            ++invocations;
            if (!validate_chromosome(out, state.active).ok() ||
                !mask_respected(p1, out, mask)) {
                ++failures;
            }
        };

        check(mutate_swap(p1, mask, rng).child);
        check(mutate_move(p1, mask, rng).child);
        const CrossoverResult sbx = crossover_sbx(p1, p2, mask, state.cost_matrix, rng);
        ++invocations;
        if (!validate_chromosome(sbx.child1, state.active).ok() ||
            !validate_chromosome(sbx.child2, state.active).ok() ||
            !mask_respected(p1, sbx.child1, mask) || !mask_respected(p2, sbx.child2, mask)) {
            ++failures;
        }
        const CrossoverResult rbx = crossover_rbx(p1, p2, mask, state.cost_matrix, rng);
        ++invocations;
        if (!validate_chromosome(rbx.child1, state.active).ok() ||
            !validate_chromosome(rbx.child2, state.active).ok() ||
            !mask_respected(p1, rbx.child1, mask) || !mask_respected(p2, rbx.child2, mask)) {
            ++failures;
        }
        check(improve_2opt(p1, mask, state.cost_matrix, rng).child);

        // Repair gets a deliberately corrupted copy: duplicate one task and
        // drop another, tampering only with mask-eligible routes.
        Chromosome broken = p1;
        const std::vector<AgentId> eligible = mask.eligible_agents(broken.agent_count());
        const AgentId tamper = eligible[rng.pick_index(eligible.size())];
        std::vector<TaskId> eligible_tasks;
        for (AgentId a : eligible) {
            const Route& r = broken.route(a);
            eligible_tasks.insert(eligible_tasks.end(), r.begin(), r.end());
        }
        if (!eligible_tasks.empty()) {
            Route& tr = broken.mutable_route(tamper);
            tr.push_back(eligible_tasks[rng.pick_index(eligible_tasks.size())]);
            if (tr.size() > 1 && rng.bernoulli(0.5)) {
                tr.erase(tr.begin() + static_cast<std::ptrdiff_t>(rng.pick_index(tr.size())));
            }
        }
        ++invocations;
        const Chromosome repaired = repair(broken, state.active, mask, state.cost_matrix);
        if (!validate_chromosome(repaired, state.active).ok() ||
            !mask_respected(p1, repaired, mask)) {
            ++failures;
        }
    }

    CriterionResult result;
    result.pass = failures == 0 && timer.seconds() < 10.0;
    result.detail = fmt("%ld operator outputs, %ld closure/mask failures, %.1fs (limit 10s)",
                        invocations, failures, timer.seconds());
    return result;
}

// C2: 2-opt never increases cost over 1000 random routes; on routes the
// operator can act on (3 to 8 tasks; shorter ones are no-ops by contract)
// the fixed point is within 10% of the enumerated optimum at least 95% of
// the time.
CriterionResult criterion_2() {
    Timer timer;
    RngStream rng(RngStream(kSeedBase).derive(2).next_u64());
    long increases = 0;
    long quality_total = 0;
    long quality_good = 0;

    for (int i = 0; i < 1000; ++i) {
        const int n_tasks = 1 + static_cast<int>(rng.pick_index(10));
        const ProblemState state = static_state(rng, 1, n_tasks);
        const Chromosome x = random_chromosome(state, rng);
        const double before = evaluate_cost(x, state.cost_matrix);
        const OperatorResult improved = improve_2opt(x, OperatorMask{}, state.cost_matrix, rng);
        const double after = evaluate_cost(improved.child, state.cost_matrix);
        if (after > before + 1e-9) {
            ++increases;
        }
        if (n_tasks >= 3 && n_tasks <= 8) {
            std::vector<Point> points;
            for (const Task& t : state.tasks) {
                points.push_back(t.location);
            }
            const double optimum =
                solve_exact_single_route(points, state.agents[0].position).cost;
            ++quality_total;
            if (after <= 1.10 * optimum + 1e-9) {
                ++quality_good;
            }
        }
    }

    const double good_share =
        quality_total > 0 ? static_cast<double>(quality_good) / quality_total : 1.0;
    CriterionResult result;
    result.pass = increases == 0 && good_share >= 0.95 && timer.seconds() < 30.0;
    result.detail = fmt("%ld cost increases (need 0); %.1f%% of %ld fixed points within "
                        "1.10x optimum (need 95%%), %.1fs (limit 30s)",
                        increases, 100.0 * good_share, quality_total, timer.seconds());
    return result;
}

// C3: the plain EA at its published settings reaches within 5% of the
// enumerated optimum on at least 45 of 50 static 2-agent/6-task instances
// after 200 generations.
CriterionResult criterion_3() {
    Timer timer;
    std::atomic<int> hits{0};
    std::vector<double> ratios(50);

    parallel_for(50, default_jobs(), [&](std::size_t i) {
        RngStream rng(RngStream(kSeedBase).derive(3, i).next_u64());
        const ProblemState state = static_state(rng, 2, 6);

        StaticInstance inst;
        inst.agents = state.agents;
        inst.tasks = state.tasks;
        const ExactSolution exact = solve_exact(inst);

        const EvolutionConfig cfg = EvolutionConfig::ea_defaults();
        RngStream evo_rng(rng.derive(11).next_u64());
        Population pop = init_population(state, cfg, evo_rng);
        evolve(pop, 200, cfg, OperatorMask{}, state.cost_matrix, evo_rng);
        const double achieved = evaluate_cost(best(pop, state.cost_matrix), state.cost_matrix);

        ratios[i] = achieved / exact.cost;
        if (achieved <= 1.05 * exact.cost + 1e-9) {
            ++hits;
        }
    });

    double worst = 0.0;
    for (double r : ratios) {
        worst = std::max(worst, r);
    }
    CriterionResult result;
    result.pass = hits >= 45 && timer.seconds() < 120.0;
    result.detail = fmt("%d/50 instances within 5%% of the exact optimum (need 45); worst "
                        "ratio %.3f; %.1fs (limit 120s)",
                        hits.load(), worst, timer.seconds());
    return result;
}

// Watches a multi-demic trial and counts protocol violations.
class ProtocolAuditor : public TrialObserver {
public:
    void on_exchange_round(const ProblemState& state, const MultiDemicState* mds,
                           const std::vector<AgentPair>& feasible,
                           const std::vector<ExchangeRecord>& records) override {
        (void)feasible;
        if (mds == nullptr) {
            return;
        }
        ++rounds;

        // Allocations must partition the active set.
        std::set<TaskId> seen;
        std::size_t total = 0;
        for (const auto& alloc : mds->allocation) {
            seen.insert(alloc.begin(), alloc.end());
            total += alloc.size();
        }
        if (seen != state.active || total != state.active.size()) {
            ++partition_violations;
        }

        // Accepted exchanges strictly reduce the pair cost, and the pair's
        // newly committed routes realise at least that cost.
        for (const ExchangeRecord& record : records) {
            if (!(record.cost_after < record.cost_before)) {
                ++exchange_violations;
            }
            const auto a = static_cast<std::size_t>(record.pair.first);
            const auto b = static_cast<std::size_t>(record.pair.second);
            const double committed =
                route_cost(mds->routes[a], record.pair.first, state.cost_matrix) +
                route_cost(mds->routes[b], record.pair.second, state.cost_matrix);
            if (committed > record.cost_after + 1e-6) {
                ++exchange_violations;
            }
        }

        // Every committed route covers exactly the agent's true allocation.
        for (std::size_t k = 0; k < mds->routes.size(); ++k) {
            const std::set<TaskId> as_set(mds->routes[k].begin(), mds->routes[k].end());
            if (as_set != mds->allocation[k] || as_set.size() != mds->routes[k].size()) {
                ++route_violations;
            }
        }
    }

    long rounds = 0;
    long partition_violations = 0;
    long exchange_violations = 0;
    long route_violations = 0;
};

// C4: zero protocol violations across 50 full (5 agents, 35 tasks) dmdea
// trials at the published 75 m radius.
CriterionResult criterion_4() {
    Timer timer;
    const std::vector<Scenario> scenarios = scenario_set(kSeedBase, 5, 35, 50);
    std::vector<ProtocolAuditor> auditors(scenarios.size());
    std::vector<bool> completed(scenarios.size(), false);

    parallel_for(scenarios.size(), default_jobs(), [&](std::size_t i) {
        TrialConfig cfg = TrialConfig::defaults_for(Algorithm::dmdea);
        cfg.sim.max_steps = 2000;
        cfg.solver_seed = RngStream(scenarios[i].seed).derive(77).next_u64();
        const TrialTrace trace = run_trial(scenarios[i], cfg, &auditors[i]);
        completed[i] = trace.completed;
    });

    long rounds = 0;
    long violations = 0;
    int incomplete = 0;
    for (std::size_t i = 0; i < auditors.size(); ++i) {
        rounds += auditors[i].rounds;
        violations += auditors[i].partition_violations + auditors[i].exchange_violations +
                      auditors[i].route_violations;
        incomplete += completed[i] ? 0 : 1;
    }

    CriterionResult result;
    result.pass = violations == 0 && incomplete == 0 && timer.seconds() < 900.0;
    result.detail = fmt("%ld exchange rounds audited over 50 trials, %ld violations, "
                        "%d incomplete, %.1fs (limit 900s)",
                        rounds, violations, incomplete, timer.seconds());
    return result;
}

// Captures the feasibility trace for the mode-equivalence comparison.
class FeasibilityRecorder : public TrialObserver {
public:
    void on_exchange_round(const ProblemState& state, const MultiDemicState* mds,
                           const std::vector<AgentPair>& feasible,
                           const std::vector<ExchangeRecord>& records) override {
        (void)state;
        (void)records;
        if (mds == nullptr) {
            return;
        }
        feasible_per_round.push_back(feasible);
        std::size_t demes = 0;
        for (const DemeSet& set : mds->deme_sets) {
            demes += set.demes.size();
        }
        deme_counts.push_back(demes);
    }

    std::vector<std::vector<AgentPair>> feasible_per_round;
    std::vector<std::size_t> deme_counts;
};

// C5: with unlimited radius and margin the decentralised variant is the
// centralised one: identical feasible pairs and deme counts each round, and
// statistically indistinguishable total distances over 50 scenarios.
CriterionResult criterion_5() {
    Timer timer;
    const std::vector<Scenario> scenarios = scenario_set(kSeedBase, 5, 35, 50);
    std::vector<double> central_distance(scenarios.size());
    std::vector<double> infinite_distance(scenarios.size());
    std::atomic<long> mismatches{0};
    std::atomic<long> wrong_deme_counts{0};

    parallel_for(scenarios.size(), default_jobs(), [&](std::size_t i) {
        const std::uint64_t solver_seed = RngStream(scenarios[i].seed).derive(55).next_u64();

        TrialConfig central = TrialConfig::defaults_for(Algorithm::cmdea);
        central.sim.max_steps = 2000;
        central.solver_seed = solver_seed;
        FeasibilityRecorder central_rec;
        const TrialTrace central_trace = run_trial(scenarios[i], central, &central_rec);
        central_distance[i] = make_report(central_trace).total_distance;

        TrialConfig infinite = TrialConfig::defaults_for(Algorithm::dmdea);
        infinite.comms = CommsConfig::decentralised(std::numeric_limits<double>::infinity(),
                                                    std::numeric_limits<double>::infinity());
        infinite.sim.max_steps = 2000;
        infinite.solver_seed = solver_seed;
        FeasibilityRecorder infinite_rec;
        const TrialTrace infinite_trace = run_trial(scenarios[i], infinite, &infinite_rec);
        infinite_distance[i] = make_report(infinite_trace).total_distance;

        if (central_rec.feasible_per_round != infinite_rec.feasible_per_round) {
            ++mismatches;
        }
        const std::size_t expected_demes =
            scenarios[i].agent_count() * scenarios[i].agent_count();
        for (const std::vector<std::size_t>* counts :
             {&central_rec.deme_counts, &infinite_rec.deme_counts}) {
            for (std::size_t c : *counts) {
                if (c != expected_demes) {
                    ++wrong_deme_counts;
                }
            }
        }
    });

    const double p = mann_whitney_p(central_distance, infinite_distance);
    CriterionResult result;
    result.pass = mismatches == 0 && wrong_deme_counts == 0 && p > 0.05;
    result.detail = fmt("feasible-set mismatches %ld, deme-count errors %ld, rank-test "
                        "p=%.3f (need > 0.05), %.0fs",
                        mismatches.load(), wrong_deme_counts.load(), p, timer.seconds());
    return result;
}

// C6: over the 25..200 m radius sweep at (5, 35), median total distance is
// non-increasing in radius (one adjacent violation allowed), and every
// radius of at least 125 m matches or beats the plain EA median.
CriterionResult criterion_6() {
    Timer timer;
    const std::vector<Scenario> scenarios = scenario_set(kSeedBase, 5, 35, 50);
    const std::vector<double> radii{25, 50, 75, 100, 125, 150, 175, 200};

    std::vector<double> sweep_medians;
    for (double radius : radii) {
        sweep_medians.push_back(
            median(total_distances(run_suite(scenarios, Algorithm::dmdea, radius))));
    }
    const double ea_median = median(total_distances(run_suite(scenarios, Algorithm::ea, 0)));

    int non_monotone = 0;
    for (std::size_t i = 1; i < sweep_medians.size(); ++i) {
        if (sweep_medians[i] > sweep_medians[i - 1] + 1e-9) {
            ++non_monotone;
        }
    }
    bool large_radius_ok = true;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] >= 125.0 && sweep_medians[i] > ea_median) {
            large_radius_ok = false;
        }
    }

    std::ostringstream sweep_text;
    for (double m : sweep_medians) {
        sweep_text << ' ' << static_cast<long>(m + 0.5);
    }
    CriterionResult result;
    result.pass = non_monotone <= 1 && large_radius_ok;
    result.detail = fmt("sweep medians%s vs ea %ld; %d non-monotone pair(s) (allow 1); "
                        "radius>=125 %s ea median; %.0fs",
                        sweep_text.str().c_str(), static_cast<long>(ea_median + 0.5),
                        non_monotone, large_radius_ok ? "<=" : "exceeds", timer.seconds());
    return result;
}

// C7: measured deme-generation counts per step: the centralised variant runs
// exactly M^2 * generations_per_step, and the 75 m decentralised variant
// strictly fewer on at least 95% of steps.
CriterionResult criterion_7() {
    Timer timer;
    const std::vector<Scenario> scenarios = scenario_set(kSeedBase, 5, 35, 50);

    std::vector<TrialTrace> central_traces;
    run_suite(scenarios, Algorithm::cmdea, 0, &central_traces);
    std::vector<TrialTrace> dm_traces;
    run_suite(scenarios, Algorithm::dmdea, 75.0, &dm_traces);

    const long full_budget = 5 * 5 * 5;  // M^2 demes x generations per step
    long central_steps = 0;
    long central_wrong = 0;
    for (const TrialTrace& trace : central_traces) {
        for (const StepRecord& step : trace.steps) {
            ++central_steps;
            if (step.demes_evolved != full_budget) {
                ++central_wrong;
            }
        }
    }
    long dm_steps = 0;
    long dm_below = 0;
    for (const TrialTrace& trace : dm_traces) {
        for (const StepRecord& step : trace.steps) {
            ++dm_steps;
            if (step.demes_evolved < full_budget) {
                ++dm_below;
            }
        }
    }
    const double below_share =
        dm_steps > 0 ? static_cast<double>(dm_below) / static_cast<double>(dm_steps) : 0.0;

    CriterionResult result;
    result.pass = central_wrong == 0 && below_share >= 0.95;
    result.detail = fmt("cmdea: %ld/%ld steps at exactly %ld deme-generations; dmdea(75m) "
                        "below budget on %.1f%% of %ld steps (need 95%%); %.0fs",
                        central_steps - central_wrong, central_steps, full_budget,
                        100.0 * below_share, dm_steps, timer.seconds());
    return result;
}

// C8: on the (3, 25) suite the multi-demic variants do not worsen churn:
// median straight-line deviation within 1.15x of the EA's.
CriterionResult criterion_8() {
    Timer timer;
    const std::vector<Scenario> scenarios = scenario_set(kSeedBase, 3, 25, 50);

    const auto deviation_median = [&](Algorithm alg, double radius) {
        const std::vector<TrialReport> reports = run_suite(scenarios, alg, radius);
        std::vector<double> deviations;
        deviations.reserve(reports.size());
        for (const TrialReport& r : reports) {
            deviations.push_back(r.deviation);
        }
        return median(std::move(deviations));
    };

    const double ea = deviation_median(Algorithm::ea, 0);
    const double cm = deviation_median(Algorithm::cmdea, 0);
    const double dm = deviation_median(Algorithm::dmdea, 75.0);
    const double bound = 1.15 * ea;

    CriterionResult result;
    result.pass = cm <= bound && dm <= bound;
    result.detail = fmt("median deviation ea %.1f, cmdea %.1f, dmdea %.1f "
                        "(bound 1.15x ea = %.1f); %.0fs",
                        ea, cm, dm, bound, timer.seconds());
    return result;
}

// C9: identical seeds replay to byte-identical traces.
CriterionResult criterion_9() {
    Timer timer;
    const Scenario scenario = generate_scenario(kSeedBase, 3, 25);
    long mismatched = 0;

    for (Algorithm alg : {Algorithm::ea, Algorithm::cmdea, Algorithm::dmdea}) {
        TrialConfig cfg = TrialConfig::defaults_for(alg);
        cfg.sim.max_steps = 2000;
        cfg.solver_seed = 99;
        std::ostringstream first;
        write_trace(run_trial(scenario, cfg), first);
        std::ostringstream second;
        write_trace(run_trial(scenario, cfg), second);
        if (first.str() != second.str() || first.str().empty()) {
            ++mismatched;
        }
    }

    CriterionResult result;
    result.pass = mismatched == 0;
    result.detail = fmt("3 algorithms replayed, %ld byte-level mismatches, %.0fs", mismatched,
                        timer.seconds());
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
        }
    }

    using CriterionFn = CriterionResult (*)();
    const struct {
        int id;
        const char* name;
        CriterionFn fn;
    } criteria[] = {
        {1, "operator closure and mask respect", criterion_1},
        {2, "2-opt monotonicity and fixed-point quality", criterion_2},
        {3, "EA convergence to the exact optimum", criterion_3},
        {4, "exchange protocol safety", criterion_4},
        {5, "centralised/decentralised mode equivalence", criterion_5},
        {6, "radius sweep reproduces the qualitative picture", criterion_6},
        {7, "deme-work scaling", criterion_7},
        {8, "churn non-regression", criterion_8},
        {9, "deterministic replay", criterion_9},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (only != 0 && criterion.id != only) {
            continue;
        }
        const CriterionResult result = criterion.fn();
        std::printf("[%s] C%d %s: %s\n", result.pass ? "PASS" : "FAIL", criterion.id,
                    criterion.name, result.detail.c_str());
        std::fflush(stdout);
        failures += result.pass ? 0 : 1;
    }
    return failures;
}
