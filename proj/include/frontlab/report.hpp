#pragma once

#include "frontlab/scenarios.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace frontlab {

/// FRONTLAB_OUT if set, else ./frontlab_out.
std::filesystem::path output_root();

/// '%.12g'; NaN is written as an empty field.
std::string format_number(double x);

void write_table_csv(std::ostream& out, const Table& t);
void write_snapshots_csv(std::ostream& out, const std::vector<Snapshot>& snaps);
void write_trace_csv(std::ostream& out, const InterfaceTrace& trace);

/// Long-format t,x,u rows; consecutive rows with equal t form one snapshot.
std::vector<Snapshot> read_snapshots_csv(const std::filesystem::path& path);

nlohmann::json verdicts_json(const std::vector<VerdictReport>& verdicts);
/// Exit status derived from a verdicts document: 0 when every verdict passes.
int exit_status_of(const nlohmann::json& verdicts);

/// snapshots.csv, trace.csv, extra tables, verdicts.json, calibration.json, meta.json.
void write_artifacts(const ScenarioResult& result, const Config& cfg, const std::filesystem::path& dir);

/// Single markdown file summarising an artifact directory; throws when verdicts.json is missing.
std::string export_report(const std::filesystem::path& dir);

} // namespace frontlab
