#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "matsp/types.hpp"

namespace matsp {

// Dense travel-cost matrix over tasks plus one dummy task per agent. The
// dummy task sits at the agent's current position and acts as a personal
// depot: leaving it costs the Euclidean distance to the target task, entering
// it costs nothing, which relaxes the return-to-depot requirement.
//
// Every build gets a fresh stamp; chromosomes key their cached cost on it so
// a rebuilt matrix (agents moved, tasks added) silently invalidates all
// caches.
class CostMatrix {
public:
    CostMatrix() = default;

    static CostMatrix build(std::span<const AgentState> agents, std::span<const Task> tasks);

    double task_to_task(TaskId i, TaskId j) const {
        return cells_[task_index(i) * dim_ + task_index(j)];
    }
    double agent_to_task(AgentId a, TaskId j) const {
        return cells_[agent_row(a) * dim_ + task_index(j)];
    }
    // Zero by construction; kept for symmetry with the matrix definition.
    double task_to_agent(TaskId i, AgentId a) const {
        return cells_[task_index(i) * dim_ + agent_row(a)];
    }

    bool has_task(TaskId id) const { return index_.find(id) != index_.end(); }
    std::size_t task_count() const { return n_tasks_; }
    std::size_t agent_count() const { return n_agents_; }
    std::uint64_t stamp() const { return stamp_; }

private:
    std::size_t task_index(TaskId id) const;
    std::size_t agent_row(AgentId a) const;

    std::vector<double> cells_;
    std::unordered_map<TaskId, std::size_t> index_;
    std::size_t dim_ = 0;
    std::size_t n_tasks_ = 0;
    std::size_t n_agents_ = 0;
    std::uint64_t stamp_ = 0;
};

}  // namespace matsp
