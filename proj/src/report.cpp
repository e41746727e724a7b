#include "frontlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace frontlab {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("missing artifact " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

fs::path output_root() {
    if (const char* env = std::getenv("FRONTLAB_OUT"); env && *env) return fs::path(env);
    return fs::path("frontlab_out");
}

std::string format_number(double x) {
    if (std::isnan(x)) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_table_csv(std::ostream& out, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << "\n";
    }
}

void write_snapshots_csv(std::ostream& out, const std::vector<Snapshot>& snaps) {
    out << "t,x,u\n";
    for (const auto& s : snaps) {
        const std::string t = format_number(s.t);
        for (std::size_t i = 0; i < s.u.size(); ++i)
            out << t << "," << format_number(s.x_at(i)) << "," << format_number(s.u[i]) << "\n";
    }
}

void write_trace_csv(std::ostream& out, const InterfaceTrace& tr) {
    Table t;
    t.columns = {"t", "x_half", "X", "Y"};
    for (double e : tr.eps) {
        const std::string tag = format_number(e);
        t.columns.push_back("z_minus_" + tag);
        t.columns.push_back("z_plus_" + tag);
        t.columns.push_back("width_" + tag);
    }
    for (std::size_t k = 0; k < tr.size(); ++k) {
        std::vector<double> row{tr.times[k], tr.x_half[k], tr.X[k], tr.Y[k]};
        for (std::size_t e = 0; e < tr.eps.size(); ++e) {
            row.push_back(tr.z_minus[e][k]);
            row.push_back(tr.z_plus[e][k]);
            row.push_back(tr.width[e][k]);
        }
        t.rows.push_back(std::move(row));
    }
    write_table_csv(out, t);
}

std::vector<Snapshot> read_snapshots_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,x,u", 0) != 0)
        throw std::runtime_error(path.string() + ": expected header t,x,u");
    std::vector<Snapshot> out;
    std::vector<double> xs;
    auto finish = [&]() {
        if (out.empty()) return;
        Snapshot& s = out.back();
        if (xs.size() < 2) throw std::runtime_error(path.string() + ": snapshot with fewer than two nodes");
        s.x0 = xs.front();
        s.dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
        s.left_far = s.u.front() > 0.5 ? 1.0 : 0.0;
        s.right_far = s.u.back() > 0.5 ? 1.0 : 0.0;
        xs.clear();
    };
    int n = 1;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        double t, x, u;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &u) != 3)
            throw std::runtime_error(path.string() + ":" + std::to_string(n) + ": malformed row");
        if (out.empty() || out.back().t != t) {
            finish();
            out.emplace_back();
            out.back().t = t;
        }
        out.back().u.push_back(u);
        xs.push_back(x);
    }
    finish();
    return out;
}

json verdicts_json(const std::vector<VerdictReport>& verdicts) {
    json arr = json::array();
    bool all = !verdicts.empty();
    for (const auto& v : verdicts) {
        arr.push_back(to_json(v));
        all = all && v.pass;
    }
    return {{"pass", all}, {"verdicts", arr}};
}

int exit_status_of(const json& doc) {
    const auto& vs = doc.at("verdicts");
    if (vs.empty()) return 1;
    for (const auto& v : vs)
        if (!v.at("pass").get<bool>()) return 1;
    return 0;
}

void write_artifacts(const ScenarioResult& r, const Config& cfg, const fs::path& dir) {
    fs::create_directories(dir);
    if (!r.snapshots.empty() && cfg.flag("run", "write_snapshots")) {
        auto out = open_out(dir / "snapshots.csv");
        write_snapshots_csv(out, r.snapshots);
    }
    if (r.trace) {
        auto out = open_out(dir / "trace.csv");
        write_trace_csv(out, *r.trace);
    }
    for (const auto& [name, table] : r.tables) {
        auto out = open_out(dir / name);
        write_table_csv(out, table);
    }
    {
        auto out = open_out(dir / "verdicts.json");
        out << verdicts_json(r.verdicts).dump(2) << "\n";
    }
    if (!r.calibration.is_null()) {
        auto out = open_out(dir / "calibration.json");
        out << r.calibration.dump(2) << "\n";
    }
    json timings = json::object();
    for (const auto& [stage, s] : r.timings) timings[stage] = s;
    json meta = {{"scenario", r.name},
                 {"kind", r.kind},
                 {"version", kVersion},
                 {"compiler", __VERSION__},
                 {"seeds", r.seeds},
                 {"timings", timings},
                 {"wall_seconds", r.wall_seconds},
                 {"summary", r.summary},
                 {"config", cfg.text()}};
    auto out = open_out(dir / "meta.json");
    out << meta.dump(2) << "\n";
}

std::string export_report(const fs::path& dir) {
    const json verdicts = json::parse(slurp(dir / "verdicts.json"));
    std::ostringstream md;
    json meta;
    if (fs::exists(dir / "meta.json")) meta = json::parse(slurp(dir / "meta.json"));
    md << "# " << (meta.is_null() ? dir.filename().string() : meta.value("scenario", std::string{})) << "\n\n";
    if (!meta.is_null()) md << "kind: " << meta.value("kind", std::string{}) << "\n\n";
    md << "overall: " << (exit_status_of(verdicts) == 0 ? "PASS" : "FAIL") << "\n\n## Verdicts\n\n";
    md << "| verdict | pass | margin |\n|---|---|---|\n";
    for (const auto& v : verdicts.at("verdicts"))
        md << "| " << v.at("name").get<std::string>() << " | " << (v.at("pass").get<bool>() ? "yes" : "no") << " | "
           << v.at("margin").dump() << " |\n";
    for (const auto& v : verdicts.at("verdicts")) {
        if (v.at("values").empty()) continue;
        md << "\n### " << v.at("name").get<std::string>() << "\n\n";
        for (const auto& [k, x] : v.at("values").items()) md << "- " << k << ": " << x.dump() << "\n";
    }
    if (!meta.is_null() && meta.contains("summary")) md << "\n## Summary\n\n```json\n" << meta["summary"].dump(2) << "\n```\n";
    if (fs::exists(dir / "calibration.json"))
        md << "\n## Calibration\n\n```json\n" << slurp(dir / "calibration.json") << "```\n";
    for (const char* name : {"shift_curve.csv", "seeds.csv", "widths.csv"}) {
        if (!fs::exists(dir / name)) continue;
        md << "\n## " << name << "\n\n```csv\n" << slurp(dir / name) << "```\n";
    }
    if (fs::exists(dir / "trace.csv")) md << "\ntrace: trace.csv\n";
    if (fs::exists(dir / "snapshots.csv")) md << "snapshots: snapshots.csv\n";
    return md.str();
}

} // namespace frontlab
