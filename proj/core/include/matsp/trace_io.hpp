#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "matsp/metrics.hpp"
#include "matsp/scenario.hpp"
#include "matsp/simulation.hpp"

namespace matsp {

// Scenario files: one JSON document holding the seed, arena, entity lists
// and arrival schedule, so third parties can re-run identical trials.
nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);
void save_scenario(const Scenario& s, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

class TraceParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Trace logs are line-delimited JSON: a header record, one record per step,
// and an end record (whose absence marks a truncated file). Rewriting the
// same trace is byte-identical; no wall-clock data is stored.
void write_trace(const TrialTrace& trace, std::ostream& out);
void write_trace_file(const TrialTrace& trace, const std::filesystem::path& path);

// Throws TraceParseError naming the offending line.
TrialTrace read_trace(std::istream& in);
TrialTrace read_trace_file(const std::filesystem::path& path);

// Per-trial CSV contract: fixed header, one row per trial. comm_radius is
// empty for the EA (it has no communication model) and "inf" when unlimited.
std::string report_csv_header();
std::string report_csv_row(const TrialTrace& trace, const TrialReport& report);

}  // namespace matsp
