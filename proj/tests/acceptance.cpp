// Runs the bundled scenarios behind each acceptance criterion and prints one
// PASS/FAIL line per criterion. Exit status is 0 only when all ten pass.

#include "frontlab/report.hpp"
#include "frontlab/scenarios.hpp"

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace frontlab;

namespace {

struct Run {
    std::string label;
    bool ok = false;
    std::string note;
    ScenarioResult result;
};

std::string brief(const ScenarioResult& r, const std::vector<std::string>& names) {
    std::ostringstream os;
    for (const auto& n : names)
        if (const VerdictReport* v = r.find(n)) {
            os << " " << n << "=" << (v->pass ? "ok" : "FAIL");
            os << "(margin " << format_number(v->margin) << ")";
        }
    os << " [" << format_number(r.wall_seconds) << " s]";
    return os.str();
}

Run run(const std::string& label, const std::string& scenario, const std::vector<std::string>& sets = {}) {
    Run out;
    out.label = label;
    try {
        Config cfg = bundled_scenario(scenario);
        for (const auto& s : sets) cfg.set(s);
        out.result = run_scenario(cfg);
        out.ok = out.result.pass();
        write_artifacts(out.result, cfg, output_root() / "acceptance" / label);
    } catch (const std::exception& e) {
        out.ok = false;
        out.note = std::string(" error: ") + e.what();
    }
    std::cerr << "  ran " << label << (out.ok ? " ok" : " FAIL") << out.note << "\n";
    return out;
}

bool verdict_ok(const Run& r, const std::string& name) {
    const VerdictReport* v = r.result.find(name);
    return v && v->pass;
}

int failures = 0;

void report(int n, const std::string& what, bool ok, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("criterion %2d %s  %s:%s\n", n, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
    std::fflush(stdout);
}

} // namespace

int main() {
    // 1
    {
        bool ok = true;
        std::string d;
        for (const char* a : {"0.1", "0.25", "0.4"}) {
            const Run r = run(std::string("cubic_speed_a") + a, "cubic_speed_oracle", {std::string("reaction.a=") + a});
            ok = ok && r.ok;
            d += " a=" + std::string(a) + brief(r.result, {"speed_oracle", "runtime"}) + r.note;
        }
        report(1, "cubic shooting speed", ok, d);
    }

    // 2
    const Run pde = run("cubic_pde_speed", "cubic_pde_speed");
    report(2, "PDE front speed at two resolutions", pde.ok,
           brief(pde.result, {"speed_dx", "speed_fine_dx", "runtime"}) + pde.note);

    // 3
    const Run conv = run("periodic_front_convergence", "periodic_front_convergence");
    report(3, "convergence to the front", conv.ok,
           brief(conv.result, {"front_hypothesis", "shift_convergence", "width_bound", "runtime"}) + conv.note);

    // 4
    const Run spark = run("spark_decomposition", "spark_decomposition");
    report(4, "spark decomposition", spark.ok, brief(spark.result, {"spark_decomposition", "runtime"}) + spark.note);

    // 5
    const Run spatial = run("spatial_terrace", "spatial_terrace");
    report(5, "spatial terrace", spatial.ok,
           brief(spatial.result, {"terrace_slope", "supersolution", "control_slope", "runtime"}) + spatial.note);

    // 6
    const Run temporal = run("temporal_terrace", "temporal_terrace");
    report(6, "temporal terrace", temporal.ok,
           brief(temporal.result, {"item_i", "item_ii", "item_iii", "item_iv", "per_block_gain", "runtime"}) +
               temporal.note);

    // 7
    {
        const Run lin = run("ignition_linear", "ignition_family_check");
        const Run quad = run("ignition_quadratic", "ignition_family_check", {"reaction.exponent=2"});
        const Run per = run("ignition_periodic", "ignition_family_check",
                            {"reaction.name=periodic_ignition", "reaction.period=2", "reaction.amp_lo=1",
                             "reaction.amp_hi=2"});
        const Run bad = run("ignition_violator", "ignition_gap_violator");
        const bool ok = lin.ok && quad.ok && per.ok && bad.ok;
        std::string d = " family " + std::to_string(int(lin.ok) + int(quad.ok) + int(per.ok)) + "/3 pass;";
        if (const VerdictReport* v = bad.result.find("violation_detected"))
            d += " violator " + std::string(v->pass ? "rejected" : "NOT rejected") + " (" + v->detail + ")";
        report(7, "ignition non-vanishing check", ok, d + lin.note + quad.note + per.note + bad.note);
    }

    // 8
    const Run puls = run("pulsating_ignition", "pulsating_ignition");
    report(8, "pulsating identity", verdict_ok(puls, "pulsating_identity"),
           brief(puls.result, {"pulsating_identity"}) + puls.note);

    // 9
    const Run erg = run("ergodic_speed_spread", "ergodic_speed_spread");
    report(9, "ergodic speed spread", erg.ok, brief(erg.result, {"seed_spread", "subadditivity", "runtime"}) + erg.note);

    // 10
    {
        const Run props = run("scheme_properties", "scheme_properties");
        const bool yx = verdict_ok(pde, "y_minus_x_bounded") && verdict_ok(conv, "y_minus_x_bounded") &&
                        verdict_ok(puls, "y_minus_x_bounded");
        report(10, "scheme properties", props.ok && yx,
               brief(props.result, {"comparison_principle", "bounds_preserved", "hump_monotone"}) +
                   " y_minus_x=" + (yx ? "ok" : "FAIL") + props.note);
    }

    std::printf("%d of 10 criteria pass\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
