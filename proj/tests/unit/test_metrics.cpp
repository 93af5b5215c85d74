#include <algorithm>

#include "doctest.h"
#include "matsp/metrics.hpp"
#include "matsp/scenario.hpp"

namespace matsp {
namespace {

// Hand-built trace: one agent walks 3 steps of 5 m straight east, completing
// a task at 15 m; a second agent never moves.
TrialTrace straight_trace() {
    TrialTrace t;
    t.n_agents = 2;
    t.agent_starts = {{0, 0}, {50, 50}};
    t.tasks = {Task{0, {15, 0}, TaskStatus::completed, 0}};
    for (int i = 1; i <= 3; ++i) {
        StepRecord step;
        step.step = i;
        step.positions = {{5.0 * i, 0}, {50, 50}};
        step.distance_travelled = 5.0;
        if (i == 3) {
            step.completions.push_back(CompletionEvent{0, 0});
        }
        t.steps.push_back(step);
    }
    t.completed = true;
    return t;
}

TEST_CASE("total distance from the position log") {
    const TrialTrace t = straight_trace();
    CHECK(total_distance(t) == doctest::Approx(15.0));
    const std::vector<double> per_agent = per_agent_distance(t);
    CHECK(per_agent[0] == doctest::Approx(15.0));
    CHECK(per_agent[1] == 0.0);  // stationary agent
}

TEST_CASE("straight-line distance anchors at the start position") {
    const TrialTrace t = straight_trace();
    const std::vector<double> straight = per_agent_straight_line(t);
    CHECK(straight[0] == doctest::Approx(15.0));
    CHECK(straight[1] == 0.0);
    const TrialReport report = make_report(t);
    CHECK(report.deviation == doctest::Approx(0.0));
    CHECK(report.total_distance - report.straight_line_distance ==
          doctest::Approx(report.deviation));
}

TEST_CASE("a detour shows up as positive deviation") {
    TrialTrace t = straight_trace();
    // Re-route the walker through (5,5) before it settles back on course.
    t.steps[0].positions[0] = {3, 4};
    const TrialReport report = make_report(t);
    CHECK(report.total_distance > 15.0);
    CHECK(report.deviation > 0.0);
}

TEST_CASE("an empty trial reports zero everywhere") {
    TrialTrace t;
    t.n_agents = 1;
    t.agent_starts = {{0, 0}};
    t.completed = true;
    const TrialReport report = make_report(t);
    CHECK(report.total_distance == 0.0);
    CHECK(report.straight_line_distance == 0.0);
    CHECK(report.deviation == 0.0);
    CHECK(report.steps == 0);
}

TEST_CASE("metric recomputation matches the sim's own step measurements") {
    const Scenario s = generate_scenario(88, 3, 8);
    TrialConfig cfg = TrialConfig::defaults_for(Algorithm::dmdea);
    cfg.solver_seed = 9;
    const TrialTrace trace = run_trial(s, cfg);
    double recorded = 0.0;
    for (const StepRecord& step : trace.steps) {
        recorded += step.distance_travelled;
    }
    CHECK(total_distance(trace) == doctest::Approx(recorded).epsilon(1e-9));
}

TEST_CASE("completion within a metre can make deviation negative") {
    // One agent, one task 10 m away; completion triggers from 1 m out if the
    // step lands there. With speed 4.5 the agent stops at 9 m, finishing
    // 1 m short of the task: realised 9 < straight-line 10.
    Scenario s;
    s.agent_starts = {{0, 0}};
    s.initial_tasks = {{10, 0}};
    TrialConfig cfg = TrialConfig::defaults_for(Algorithm::ea);
    cfg.sim.agent_speed = 4.5;
    const TrialTrace trace = run_trial(s, cfg);
    REQUIRE(trace.completed);
    const TrialReport report = make_report(trace);
    CHECK(report.deviation == doctest::Approx(-1.0));
}

TEST_CASE("aggregate quartiles on the known five-point set") {
    const DistributionSummary s = aggregate({5, 3, 1, 4, 2});
    CHECK(s.median == doctest::Approx(3.0));
    CHECK(s.q1 == doctest::Approx(2.0));
    CHECK(s.q3 == doctest::Approx(4.0));
    CHECK(s.min == 1.0);
    CHECK(s.max == 5.0);
    CHECK(s.n == 5);
}

TEST_CASE("aggregate of a single value collapses to that value") {
    const DistributionSummary s = aggregate({7.5});
    CHECK(s.min == 7.5);
    CHECK(s.q1 == 7.5);
    CHECK(s.median == 7.5);
    CHECK(s.q3 == 7.5);
    CHECK(s.max == 7.5);
}

TEST_CASE("aggregate matches an independent sort-based computation") {
    RngStream rng(14);
    std::vector<double> values;
    for (int i = 0; i < 101; ++i) {
        values.push_back(rng.uniform_real() * 1000);
    }
    const DistributionSummary s = aggregate(values);

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    CHECK(s.min == sorted.front());
    CHECK(s.max == sorted.back());
    CHECK(s.median == doctest::Approx(sorted[50]));  // odd count: exact middle
    CHECK(s.q1 == doctest::Approx(sorted[25]));
    CHECK(s.q3 == doctest::Approx(sorted[75]));
}

TEST_CASE("aggregate refuses an empty sample") {
    CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
}

}  // namespace
}  // namespace matsp
