#include "matsp/problem_state.hpp"

namespace matsp {

std::vector<Task> ProblemState::revealed_tasks() const {
    std::vector<Task> out;
    out.reserve(tasks.size());
    for (const Task& t : tasks) {
        if (t.status != TaskStatus::pending) {
            out.push_back(t);
        }
    }
    return out;
}

void ProblemState::rebuild_matrix() {
    const std::vector<Task> revealed = revealed_tasks();
    cost_matrix = CostMatrix::build(agents, revealed);
}

}  // namespace matsp
