#include "matsp/chromosome.hpp"

#include <map>
#include <sstream>

namespace matsp {

std::vector<TaskId> Chromosome::all_tasks() const {
    std::vector<TaskId> out;
    for (const Route& r : routes_) {
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

std::set<TaskId> Chromosome::task_set() const {
    std::set<TaskId> out;
    for (const Route& r : routes_) {
        out.insert(r.begin(), r.end());
    }
    return out;
}

double route_cost(const Route& route, AgentId agent, const CostMatrix& cm) {
    if (route.empty()) {
        return 0.0;
    }
    double cost = cm.agent_to_task(agent, route.front());
    for (std::size_t i = 1; i < route.size(); ++i) {
        cost += cm.task_to_task(route[i - 1], route[i]);
    }
    return cost;  // closing leg back to the dummy is free
}

double evaluate_cost(const Chromosome& x, const CostMatrix& cm) {
    if (x.has_cached_cost(cm)) {
        return x.cached_cost_value();
    }
    double total = 0.0;
    for (std::size_t a = 0; a < x.agent_count(); ++a) {
        total += route_cost(x.route(static_cast<AgentId>(a)), static_cast<AgentId>(a), cm);
    }
    x.store_cost(cm, total);
    return total;
}

double fitness(const Chromosome& x, const CostMatrix& cm) {
    return -evaluate_cost(x, cm);
}

ValidationReport validate_chromosome(const Chromosome& x, const std::set<TaskId>& required) {
    ValidationReport report;
    std::map<TaskId, int> counts;
    for (const Route& r : x.routes()) {
        for (TaskId t : r) {
            ++counts[t];
        }
    }
    for (const auto& [t, n] : counts) {
        if (n > 1) {
            report.duplicated.push_back(t);
        }
        if (required.find(t) == required.end()) {
            report.foreign.push_back(t);
        }
    }
    for (TaskId t : required) {
        if (counts.find(t) == counts.end()) {
            report.unallocated.push_back(t);
        }
    }
    return report;
}

std::string ValidationReport::describe() const {
    if (ok()) {
        return "ok";
    }
    std::ostringstream os;
    auto list = [&os](const char* label, const std::vector<TaskId>& ids) {
        if (ids.empty()) {
            return;
        }
        os << label << ":";
        for (TaskId t : ids) {
            os << ' ' << t;
        }
        os << "; ";
    };
    list("duplicated", duplicated);
    list("unallocated", unallocated);
    list("foreign", foreign);
    return os.str();
}

}  // namespace matsp
