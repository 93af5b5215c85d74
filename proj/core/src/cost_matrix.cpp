#include "matsp/cost_matrix.hpp"

#include <atomic>

namespace matsp {

namespace {
std::atomic<std::uint64_t> g_next_stamp{1};
}

CostMatrix CostMatrix::build(std::span<const AgentState> agents, std::span<const Task> tasks) {
    CostMatrix cm;
    cm.n_tasks_ = tasks.size();
    cm.n_agents_ = agents.size();
    cm.dim_ = cm.n_tasks_ + cm.n_agents_;
    cm.cells_.assign(cm.dim_ * cm.dim_, 0.0);
    cm.stamp_ = g_next_stamp.fetch_add(1, std::memory_order_relaxed);

    cm.index_.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        cm.index_.emplace(tasks[i].id, i);
    }

    // Task-task block: symmetric Euclidean distances, zero diagonal.
    for (std::size_t i = 0; i < cm.n_tasks_; ++i) {
        for (std::size_t j = i + 1; j < cm.n_tasks_; ++j) {
            const double d = distance(tasks[i].location, tasks[j].location);
            cm.cells_[i * cm.dim_ + j] = d;
            cm.cells_[j * cm.dim_ + i] = d;
        }
    }
    // Agent dummy rows: distance from the agent's position out to each task.
    // Columns into a dummy stay zero (free tour closure); so does the
    // agent-agent block, which no route can reference.
    for (std::size_t a = 0; a < cm.n_agents_; ++a) {
        const std::size_t row = cm.n_tasks_ + a;
        for (std::size_t j = 0; j < cm.n_tasks_; ++j) {
            cm.cells_[row * cm.dim_ + j] = distance(agents[a].position, tasks[j].location);
        }
    }
    return cm;
}

std::size_t CostMatrix::task_index(TaskId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw StructuralError("cost matrix has no task " + std::to_string(id));
    }
    return it->second;
}

std::size_t CostMatrix::agent_row(AgentId a) const {
    if (a < 0 || static_cast<std::size_t>(a) >= n_agents_) {
        throw StructuralError("cost matrix has no agent " + std::to_string(a));
    }
    return n_tasks_ + static_cast<std::size_t>(a);
}

}  // namespace matsp
