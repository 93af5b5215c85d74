#pragma once

#include <set>
#include <vector>

#include "matsp/cost_matrix.hpp"
#include "matsp/types.hpp"

namespace matsp {

// Live world snapshot: agents, the full task history and the current cost
// matrix. Task records are kept after completion (ids are never reused), both
// for metrics and so that stale references in slowly-updated demes still
// evaluate to finite, meaningful costs. The matrix is rebuilt from scratch
// every step; at the problem sizes used here that is cheaper than proving an
// incremental patch correct.
struct ProblemState {
    std::vector<AgentState> agents;
    std::vector<Task> tasks;  // indexed by TaskId
    std::set<TaskId> active;
    CostMatrix cost_matrix;
    int step = 0;

    const Task& task(TaskId id) const { return tasks.at(static_cast<std::size_t>(id)); }
    Task& task(TaskId id) { return tasks.at(static_cast<std::size_t>(id)); }

    std::size_t agent_count() const { return agents.size(); }

    // Tasks that have ever been activated (active or completed). The matrix
    // covers these, so beliefs about since-completed tasks stay evaluable.
    std::vector<Task> revealed_tasks() const;

    void rebuild_matrix();
};

}  // namespace matsp
