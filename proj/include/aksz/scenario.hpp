#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aksz/mapping_space.hpp"

namespace aksz {

using ordered_json = nlohmann::ordered_json;

inline const std::vector<std::string>& known_tasks() {
    static const std::vector<std::string> tasks{"check-homological", "check-volume", "bracket-table",
                                                "aksz",              "verify-theorem", "compose-check"};
    return tasks;
}

struct TaskSpec {
    std::string name;
    bool expect_pass = true;
};

struct ComposeSpec {
    Chart M1, M2, M3;
    VectorField X1, X2, X3;
    std::optional<PolyMap> phi, psi;
};

/// A validated scenario document.
struct Scenario {
    std::string name;
    std::string rho_text;
    std::optional<MappingChart> chart;
    VectorField X1;
    VectorField X2;
    // Factorized structure on the target.
    std::optional<SuperForm> omega;
    std::optional<SuperForm> lambda;
    std::optional<GradedPoly> H;
    // General structure on source x target.
    std::optional<SuperForm> omegabar;
    std::optional<SuperForm> lambdabar;
    std::optional<ComposeSpec> compose;
    std::vector<TaskSpec> tasks;

    bool factorized() const { return omega.has_value(); }
};

/// Parses and validates a scenario document. JSON syntax errors raise
/// ParseError with the document line and column; structural problems raise
/// Error(schema) naming the JSON path; expression errors name the path and the
/// position inside the expression.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario_file(const std::string& path);

struct TaskResult {
    std::string task;
    std::string status;  // pass | fail | error
    bool expect_pass = true;
    bool matched() const { return status == (expect_pass ? "pass" : "fail"); }
    ordered_json results = ordered_json::object();
    std::vector<std::string> diagnostics;
    double seconds = 0;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<TaskResult> tasks;
    bool passed() const;
};

/// Runs the scenario's tasks in declaration order; a non-empty filter keeps
/// only the named tasks.
ScenarioReport run_scenario(const Scenario& s, const std::vector<std::string>& filter = {});
TaskResult run_task(const Scenario& s, const TaskSpec& task);

inline constexpr int report_schema_version = 1;

ordered_json report_json(const ScenarioReport& r, bool timing = false);
std::string report_text(const ScenarioReport& r, bool timing = false);

}  // namespace aksz
