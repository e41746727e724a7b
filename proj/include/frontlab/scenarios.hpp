#pragma once

#include "frontlab/config.hpp"
#include "frontlab/diagnostics.hpp"
#include "frontlab/pdesim.hpp"
#include "frontlab/verdict.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frontlab {

/// Column-named numeric table written as CSV.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct ScenarioResult {
    std::string name;
    std::string kind;
    std::vector<VerdictReport> verdicts;
    std::vector<Snapshot> snapshots;        // primary run
    std::optional<InterfaceTrace> trace;
    nlohmann::json calibration;             // null unless the scenario calibrates
    nlohmann::json summary = nlohmann::json::object();
    std::vector<std::pair<std::string, Table>> tables;  // extra CSVs by file name
    std::vector<unsigned long long> seeds;
    std::vector<std::pair<std::string, double>> timings;
    double wall_seconds = 0.0;

    bool pass() const;
    const VerdictReport* find(const std::string& verdict) const;
};

/// Validates the config, then builds the reaction, runs the pipeline of the
/// configured kind and collects verdicts. Throws SchemaError for config
/// problems; library errors propagate.
ScenarioResult run_scenario(const Config& cfg);

struct CatalogEntry {
    const char* name;
    const char* claim;  // one line: what the scenario demonstrates
    const char* ini;
};

const std::vector<CatalogEntry>& scenario_catalog();
/// Bundled scenario by name; throws std::invalid_argument when unknown.
Config bundled_scenario(const std::string& name);

// shared pieces, also used by the CLI verbs
ReactionSpec reaction_from(const Config& cfg);
InitialCondition initial_from(const Config& cfg, const std::string& section, const ReactionSpec& f);
SimConfig sim_config_from(const Config& cfg, const ReactionSpec& f, const std::string& initial_section = "initial");

nlohmann::json to_json(const VerdictReport& rep);
nlohmann::json to_json(const SimStats& stats);

} // namespace frontlab
