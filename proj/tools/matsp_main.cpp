// matsp: run dynamic multi-agent travelling-salesman trials and inspect the
// traces they produce. `matsp run` drives single trials, scenario batches,
// the full benchmark suite and communication-radius sweeps; `matsp replay`
// dumps or exports a recorded trace.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "matsp/metrics.hpp"
#include "matsp/parallel.hpp"
#include "matsp/scenario.hpp"
#include "matsp/simulation.hpp"
#include "matsp/trace_io.hpp"

namespace {

using namespace matsp;

constexpr std::uint64_t kDefaultSeedBase = 424242;

struct CliOptions {
    std::string algorithm = "dmdea";
    int agents = 5;
    int tasks = 35;
    std::optional<std::uint64_t> seed;
    int scenarios = 1;
    std::optional<double> radius;
    std::optional<double> margin;
    std::optional<double> speed;
    std::string suite;
    std::string radius_sweep;
    std::string out_dir = "matsp_out";
    std::string scenario_file;
    std::string config_file;
    unsigned jobs = default_jobs();
    bool no_traces = false;
    std::optional<int> mu;
    std::optional<int> lambda;
    std::optional<int> generations;
    std::optional<int> max_steps;
};

std::uint64_t seed_base(const CliOptions& opt) {
    if (opt.seed) {
        return *opt.seed;
    }
    if (const char* env = std::getenv("MATSP_SEED_BASE")) {
        return std::strtoull(env, nullptr, 10);
    }
    return kDefaultSeedBase;
}

// Config-file values sit between the built-in defaults and the flags.
void apply_config_file(TrialConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CLI::ValidationError("--config", "cannot open " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ValidationError("--config", path + ": " + e.what());
    }
    if (j.contains("evolution")) {
        const auto& e = j["evolution"];
        cfg.evolution.mu = e.value("mu", cfg.evolution.mu);
        cfg.evolution.lambda = e.value("lambda", cfg.evolution.lambda);
        cfg.evolution.generations_per_step =
            e.value("generations_per_step", cfg.evolution.generations_per_step);
        cfg.evolution.p_crossover = e.value("p_crossover", cfg.evolution.p_crossover);
        cfg.evolution.p_mutation = e.value("p_mutation", cfg.evolution.p_mutation);
        cfg.evolution.p_improvement = e.value("p_improvement", cfg.evolution.p_improvement);
        cfg.evolution.tournament_size = e.value("tournament_size", cfg.evolution.tournament_size);
        cfg.evolution.n_migrate = e.value("n_migrate", cfg.evolution.n_migrate);
    }
    if (j.contains("comms")) {
        const auto& c = j["comms"];
        cfg.comms.comm_radius = c.value("radius", cfg.comms.comm_radius);
        cfg.comms.consideration_margin = c.value("margin", cfg.comms.consideration_margin);
    }
    if (j.contains("sim")) {
        const auto& s = j["sim"];
        cfg.sim.agent_speed = s.value("speed", cfg.sim.agent_speed);
        cfg.sim.completion_radius = s.value("completion_radius", cfg.sim.completion_radius);
        cfg.sim.max_steps = s.value("max_steps", cfg.sim.max_steps);
    }
}

TrialConfig build_trial_config(const CliOptions& opt, Algorithm algorithm,
                               std::uint64_t scenario_seed) {
    TrialConfig cfg = TrialConfig::defaults_for(algorithm);
    if (!opt.config_file.empty()) {
        apply_config_file(cfg, opt.config_file);
    }
    if (algorithm == Algorithm::dmdea) {
        if (opt.radius) {
            cfg.comms.comm_radius = *opt.radius;
        }
        if (opt.margin) {
            cfg.comms.consideration_margin = *opt.margin;
        }
    }
    if (opt.speed) {
        cfg.sim.agent_speed = *opt.speed;
    }
    if (opt.mu) {
        cfg.evolution.mu = *opt.mu;
    }
    if (opt.lambda) {
        cfg.evolution.lambda = *opt.lambda;
    }
    if (opt.generations) {
        cfg.evolution.generations_per_step = *opt.generations;
    }
    if (opt.max_steps) {
        cfg.sim.max_steps = *opt.max_steps;
    }
    cfg.solver_seed =
        RngStream(scenario_seed).derive(static_cast<std::uint64_t>(algorithm)).next_u64();
    return cfg;
}

struct TrialSpec {
    Algorithm algorithm;
    Scenario scenario;
    TrialConfig config;
};

struct TrialOutcome {
    TrialTrace trace;
    TrialReport report;
};

std::vector<double> parse_sweep(const std::string& spec) {
    double lo = 0;
    double hi = 0;
    double step = 0;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 ||
        hi < lo) {
        throw CLI::ValidationError("--radius-sweep", "expected lo:hi:step with step > 0");
    }
    std::vector<double> out;
    for (double r = lo; r <= hi + 1e-9; r += step) {
        out.push_back(r);
    }
    return out;
}

std::string trace_filename(const TrialSpec& spec) {
    std::ostringstream name;
    name << "trace_" << to_string(spec.algorithm) << "_a" << spec.scenario.agent_count() << "_t"
         << spec.scenario.initial_task_count();
    if (spec.algorithm == Algorithm::dmdea) {
        name << "_r" << spec.config.comms.comm_radius;
    }
    name << "_s" << spec.scenario.seed << ".jsonl";
    return name.str();
}

int run_command(const CliOptions& opt) {
    const std::uint64_t base = seed_base(opt);
    std::vector<TrialSpec> specs;

    if (!opt.suite.empty()) {
        if (opt.suite != "paper") {
            throw CLI::ValidationError("--suite", "only the 'paper' suite is defined");
        }
        for (Algorithm alg : {Algorithm::ea, Algorithm::cmdea, Algorithm::dmdea}) {
            for (const Scenario& s : paper_suite(base)) {
                specs.push_back({alg, s, build_trial_config(opt, alg, s.seed)});
            }
        }
    } else if (!opt.radius_sweep.empty()) {
        const std::vector<double> radii = parse_sweep(opt.radius_sweep);
        const int count = opt.scenarios > 1 ? opt.scenarios : 50;
        const std::vector<Scenario> set = scenario_set(base, opt.agents, opt.tasks, count);
        for (double r : radii) {
            for (const Scenario& s : set) {
                TrialSpec spec{Algorithm::dmdea, s,
                               build_trial_config(opt, Algorithm::dmdea, s.seed)};
                spec.config.comms.comm_radius = r;
                specs.push_back(std::move(spec));
            }
        }
    } else {
        const Algorithm alg = algorithm_from_string(opt.algorithm);
        std::vector<Scenario> set;
        if (!opt.scenario_file.empty()) {
            set.push_back(load_scenario(opt.scenario_file));
        } else if (opt.scenarios <= 1) {
            set.push_back(generate_scenario(base, opt.agents, opt.tasks));
        } else {
            set = scenario_set(base, opt.agents, opt.tasks, opt.scenarios);
        }
        for (const Scenario& s : set) {
            specs.push_back({alg, s, build_trial_config(opt, alg, s.seed)});
        }
    }

    const std::filesystem::path out_dir(opt.out_dir);
    std::filesystem::create_directories(out_dir);

    std::vector<TrialOutcome> outcomes(specs.size());
    parallel_for(specs.size(), opt.jobs, [&](std::size_t i) {
        const auto start = std::chrono::steady_clock::now();
        TrialTrace trace = run_trial(specs[i].scenario, specs[i].config);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        outcomes[i].report = make_report(trace, elapsed.count());
        if (!opt.no_traces) {
            write_trace_file(trace, out_dir / trace_filename(specs[i]));
        }
        outcomes[i].trace = std::move(trace);
    });

    std::ofstream csv(out_dir / "report.csv");
    csv << report_csv_header() << '\n';
    int incomplete = 0;
    for (const TrialOutcome& o : outcomes) {
        csv << report_csv_row(o.trace, o.report) << '\n';
        incomplete += o.report.completed ? 0 : 1;
    }

    // Aggregate per (algorithm, size, radius) group, in first-seen order.
    std::map<std::string, std::vector<std::size_t>> groups;
    std::vector<std::string> group_order;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        std::ostringstream key;
        key << to_string(outcomes[i].trace.algorithm) << ',' << outcomes[i].trace.n_agents << ','
            << outcomes[i].trace.n_tasks_initial << ',';
        if (outcomes[i].trace.algorithm != Algorithm::ea) {
            key << (std::isfinite(outcomes[i].trace.comm_radius)
                        ? nlohmann::json(outcomes[i].trace.comm_radius).dump()
                        : "inf");
        }
        if (groups.find(key.str()) == groups.end()) {
            group_order.push_back(key.str());
        }
        groups[key.str()].push_back(i);
    }

    std::ofstream agg(out_dir / "aggregate.csv");
    agg << "algorithm,n_agents,n_tasks,comm_radius,metric,n,min,q1,median,q3,max\n";
    for (const std::string& key : group_order) {
        const std::vector<std::size_t>& idx = groups[key];
        const auto emit = [&](const char* metric, auto getter) {
            std::vector<double> values;
            values.reserve(idx.size());
            for (std::size_t i : idx) {
                values.push_back(getter(outcomes[i].report));
            }
            const DistributionSummary s = aggregate(values);
            agg << key << ',' << metric << ',' << s.n << ',' << nlohmann::json(s.min).dump()
                << ',' << nlohmann::json(s.q1).dump() << ',' << nlohmann::json(s.median).dump()
                << ',' << nlohmann::json(s.q3).dump() << ',' << nlohmann::json(s.max).dump()
                << '\n';
        };
        emit("total_distance", [](const TrialReport& r) { return r.total_distance; });
        emit("straight_line_deviation", [](const TrialReport& r) { return r.deviation; });
        emit("steps", [](const TrialReport& r) { return static_cast<double>(r.steps); });
        emit("n_exchanges", [](const TrialReport& r) { return static_cast<double>(r.n_exchanges); });
    }

    for (const std::string& key : group_order) {
        std::vector<double> dist;
        for (std::size_t i : groups[key]) {
            dist.push_back(outcomes[i].report.total_distance);
        }
        std::cout << key << "  trials=" << dist.size()
                  << "  median_total_distance=" << median(dist) << '\n';
    }
    std::cout << "wrote " << outcomes.size() << " trial(s) to " << out_dir.string() << '\n';
    if (incomplete > 0) {
        std::cerr << "warning: " << incomplete
                  << " trial(s) hit the step limit before completing all tasks\n";
        return 2;
    }
    return 0;
}

int replay_command(const std::string& path, const std::string& series_path) {
    TrialTrace trace;
    try {
        trace = read_trace_file(path);
    } catch (const TraceParseError& e) {
        std::cerr << "replay: " << e.what() << '\n';
        return 1;
    }

    std::cout << "trace: " << to_string(trace.algorithm) << ", " << trace.n_agents
              << " agents, " << trace.n_tasks_initial << "+"
              << (trace.n_tasks_total - trace.n_tasks_initial) << " tasks, scenario seed "
              << trace.scenario_seed << '\n';
    for (const StepRecord& step : trace.steps) {
        std::cout << "step " << step.step << "  cost=" << step.committed_cost
                  << "  moved=" << step.distance_travelled;
        if (!step.completions.empty()) {
            std::cout << "  done:";
            for (const CompletionEvent& e : step.completions) {
                std::cout << ' ' << e.task << "<-a" << e.agent;
            }
        }
        if (!step.arrivals.empty()) {
            std::cout << "  new:";
            for (const ArrivalEvent& e : step.arrivals) {
                std::cout << ' ' << e.task << "->a" << e.assigned;
            }
        }
        if (!step.exchanges.empty()) {
            std::cout << "  exchange:";
            for (const ExchangeRecord& r : step.exchanges) {
                std::cout << " (" << r.pair.first << "," << r.pair.second << " "
                          << r.cost_before << "->" << r.cost_after << ")";
            }
        }
        std::cout << '\n';
    }

    const TrialReport report = make_report(trace);
    std::cout << "totals: distance=" << report.total_distance
              << " deviation=" << report.deviation << " steps=" << report.steps
              << " exchanges=" << report.n_exchanges
              << (report.completed ? "" : "  [incomplete]") << '\n';

    if (!series_path.empty()) {
        std::ofstream out(series_path);
        out << "step,committed_cost,distance_travelled,cumulative_distance,active_routes,"
               "completions,arrivals,exchanges,demes_evolved\n";
        double cumulative = 0.0;
        for (const StepRecord& step : trace.steps) {
            cumulative += step.distance_travelled;
            int active_routes = 0;
            for (const Route& r : step.routes) {
                active_routes += r.empty() ? 0 : 1;
            }
            out << step.step << ',' << nlohmann::json(step.committed_cost).dump() << ','
                << nlohmann::json(step.distance_travelled).dump() << ','
                << nlohmann::json(cumulative).dump() << ',' << active_routes << ','
                << step.completions.size() << ',' << step.arrivals.size() << ','
                << step.exchanges.size() << ',' << step.demes_evolved << '\n';
        }
        std::cout << "series written to " << series_path << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic multi-agent travelling-salesman trial runner"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* run = app.add_subcommand("run", "run one or many trials");
    run->add_option("--algorithm", opt.algorithm, "ea, cmdea or dmdea")
        ->check(CLI::IsMember({"ea", "cmdea", "dmdea"}));
    run->add_option("--agents", opt.agents, "number of agents")->check(CLI::PositiveNumber);
    run->add_option("--tasks", opt.tasks, "initial task count")->check(CLI::PositiveNumber);
    run->add_option("--seed", opt.seed, "scenario seed (or batch seed base)");
    run->add_option("--scenarios", opt.scenarios, "number of scenarios to run")
        ->check(CLI::PositiveNumber);
    run->add_option("--radius", opt.radius, "dmdea communication radius, metres");
    run->add_option("--margin", opt.margin, "dmdea consideration margin, metres");
    run->add_option("--speed", opt.speed, "agent speed, metres per step");
    run->add_option("--suite", opt.suite, "named benchmark suite (paper)");
    run->add_option("--radius-sweep", opt.radius_sweep, "dmdea radius sweep lo:hi:step");
    run->add_option("--out", opt.out_dir, "output directory");
    run->add_option("--scenario-file", opt.scenario_file, "run one scenario from a file");
    run->add_option("--config", opt.config_file, "JSON config file");
    run->add_option("--jobs", opt.jobs, "parallel trials");
    run->add_flag("--no-traces", opt.no_traces, "skip writing per-trial trace logs");
    run->add_option("--mu", opt.mu, "population size override");
    run->add_option("--lambda", opt.lambda, "offspring per generation override");
    run->add_option("--generations", opt.generations, "generations per time-step override");
    run->add_option("--max-steps", opt.max_steps, "simulation step cap override");

    std::string trace_path;
    std::string series_path;
    CLI::App* replay = app.add_subcommand("replay", "dump a recorded trace");
    replay->add_option("trace", trace_path, "trace file (.jsonl)")->required();
    replay->add_option("--series", series_path, "write a per-step CSV series");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_command(opt);
        }
        return replay_command(trace_path, series_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "matsp: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "matsp: " << e.what() << '\n';
        return 1;
    }
}
