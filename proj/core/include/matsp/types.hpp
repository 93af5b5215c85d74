#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace matsp {

// Opaque identifiers. TaskIds are stable for the lifetime of a trial and
// never reused; AgentIds index the agent list, in [0, M).
using TaskId = std::int32_t;
using AgentId = std::int32_t;

// Thrown when an internal consistency contract is broken: a route referencing
// a task the cost matrix has never seen, a personal-deme route whose task set
// does not match the agent's committed allocation, and the like. These signal
// bugs in the calling layer, not recoverable conditions.
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline bool finite(const Point& p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
}

enum class TaskStatus { pending, active, completed };

struct Task {
    TaskId id = -1;
    Point location;
    TaskStatus status = TaskStatus::pending;
    int arrival_step = 0;  // 0 for tasks present from the start
};

struct AgentState {
    AgentId id = -1;
    Point position;
    double speed = 5.0;  // metres per time-step
};

// One agent's visit order. Routes never contain agent dummies; the implicit
// start of every route is the owning agent's current position.
using Route = std::vector<TaskId>;

}  // namespace matsp
