// frontlab command line: scenario runner and single-purpose verbs.

#include "frontlab/calibrate.hpp"
#include "frontlab/config.hpp"
#include "frontlab/diagnostics.hpp"
#include "frontlab/reaction.hpp"
#include "frontlab/report.hpp"
#include "frontlab/scenarios.hpp"
#include "frontlab/wavesolve.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

using namespace frontlab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, verdict_fail = 1, schema = 2, runtime = 3 };

std::map<std::string, double> parse_params(const std::vector<std::string>& kv) {
    std::map<std::string, double> out;
    for (const auto& s : kv) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw SchemaError(s, 0, "parameter must look like key=value: " + s);
        try {
            std::size_t used = 0;
            const std::string v = s.substr(eq + 1);
            out[s.substr(0, eq)] = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
        } catch (const std::exception&) {
            throw SchemaError(s, 0, "parameter value is not a number: " + s);
        }
    }
    return out;
}

ReactionSpec reaction_arg(const std::string& name, const std::vector<std::string>& params) {
    try {
        return make_reaction(name, parse_params(params));
    } catch (const std::invalid_argument& e) {
        throw SchemaError("reaction", 0, e.what());
    }
}

Config scenario_arg(const std::string& ref, const std::vector<std::string>& sets) {
    Config c = fs::exists(ref) ? Config::load(ref) : bundled_scenario(ref);
    for (const auto& s : sets) c.set(s);
    return c;
}

fs::path artifact_dir(const Config& cfg, const std::string& out) {
    return out.empty() ? output_root() / cfg.str("scenario", "name") : fs::path(out);
}

void print_verdicts(const std::string& name, const std::vector<VerdictReport>& vs) {
    for (const auto& v : vs)
        std::cout << name << "  " << (v.pass ? "PASS" : "FAIL") << "  " << v.name << "  margin " << format_number(v.margin)
                  << "\n";
}

int run_one(const Config& cfg, const std::string& out, bool quiet) {
    const ScenarioResult r = run_scenario(cfg);
    const fs::path dir = artifact_dir(cfg, out);
    write_artifacts(r, cfg, dir);
    if (!quiet) {
        print_verdicts(r.name, r.verdicts);
        std::cout << r.name << "  " << (r.pass() ? "PASS" : "FAIL") << "  artifacts in " << dir.string() << "\n";
    }
    return r.pass() ? ok : verdict_fail;
}

json constants_json(const ReactionSpec& f) {
    const auto& env = f.envelope();
    const auto variant = f.kind() == ReactionKind::time_dependent ? HypothesisVariant::time : HypothesisVariant::space;
    const double c0 = front_speed(env.f0).speed;
    const VerdictReport hyp = check_front_hypothesis(env, c0, variant);
    json out = {{"reaction", f.name()},  {"kind", to_string(f.kind())}, {"taxonomy", to_string(f.taxonomy())},
                {"theta", f.theta()},    {"theta0", f.theta0()},        {"theta1", f.theta1()},
                {"lipschitz_K", f.lipschitz_K()}, {"c0", c0},           {"hypothesis", to_json(hyp)}};
    if (hyp.pass) {
        const DerivedConstants dc = derive_constants(env, c0, variant);
        out["derived"] = {{"epsilon0", dc.epsilon0}, {"theta1_prime", dc.theta1_prime},
                          {"theta1_dblprime", dc.theta1_dblprime}, {"zeta", dc.zeta}, {"xi", dc.xi},
                          {"c_zeta", dc.c_zeta}, {"c_xi", dc.c_xi}, {"sup_ratio", dc.sup_ratio}};
    }
    return out;
}

template <class F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return schema;
    } catch (const FrontlabError& e) {
        std::cerr << "runtime error (" << to_string(e.code()) << "): " << e.what() << "\n";
        return runtime;
    } catch (const std::invalid_argument& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return schema;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return runtime;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frontlab: fronts of heterogeneous reaction-diffusion equations"};
    app.require_subcommand(1);
    int status = ok;

    std::string reaction;
    std::vector<std::string> params;
    auto add_reaction = [&](CLI::App* sub) {
        sub->add_option("-r,--reaction", reaction, "reaction constructor name")->required();
        sub->add_option("-p,--param", params, "constructor parameter key=value (repeatable)");
    };

    // speed
    auto* speed = app.add_subcommand("speed", "front speed of a homogeneous reaction by shooting");
    add_reaction(speed);
    std::string profile_out;
    speed->add_option("--profile", profile_out, "write the profile as CSV");
    speed->callback([&] {
        status = guarded([&] {
            const ReactionSpec f = reaction_arg(reaction, params);
            const SpeedResult r = front_speed(f);
            std::cout << json{{"speed", r.speed}, {"bracket", {r.bracket_lo, r.bracket_hi}},
                              {"iterations", r.iterations}, {"residual_max", r.residual_max}}.dump(2)
                      << "\n";
            if (!profile_out.empty()) {
                Table t{{"s", "W"}, {}};
                const auto& W = r.profile.values();
                for (std::size_t i = 0; i < W.size(); ++i)
                    t.rows.push_back({r.profile.s_first() + r.profile.step() * static_cast<double>(i), W[i]});
                std::ofstream out(profile_out);
                write_table_csv(out, t);
            }
            return ok;
        });
    });

    // constants
    auto* constants = app.add_subcommand("constants", "derived constants and front hypothesis margin");
    add_reaction(constants);
    constants->callback([&] {
        status = guarded([&] {
            std::cout << constants_json(reaction_arg(reaction, params)).dump(2) << "\n";
            return ok;
        });
    });

    // check
    auto* check = app.add_subcommand("check", "sampled validation, classification and hypothesis checks");
    add_reaction(check);
    check->callback([&] {
        status = guarded([&] {
            const ReactionSpec f = reaction_arg(reaction, params);
            std::vector<VerdictReport> vs{validate(f)};
            const Classification c = classify(f);
            const auto variant =
                f.kind() == ReactionKind::time_dependent ? HypothesisVariant::time : HypothesisVariant::space;
            vs.push_back(check_front_hypothesis(f, variant));
            if (c.taxonomy == Taxonomy::ignition || c.taxonomy == Taxonomy::pure_ignition) {
                const double c0 = front_speed(f.envelope().f0).speed;
                vs.push_back(check_ignition_hypothesis(f, c0 * c0 / 8.0, 0.0));
            }
            json out = verdicts_json(vs);
            out["taxonomy"] = to_string(c.taxonomy);
            out["inconclusive"] = c.inconclusive;
            out["classification_detail"] = c.detail;
            std::cout << out.dump(2) << "\n";
            return exit_status_of(out) == 0 ? ok : verdict_fail;
        });
    });

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "run only the simulation of a scenario");
    std::string scenario_ref, out_dir;
    std::vector<std::string> sets;
    simulate_cmd->add_option("scenario", scenario_ref, "bundled scenario name or INI file")->required();
    simulate_cmd->add_option("--set", sets, "override section.key=value (repeatable)");
    simulate_cmd->add_option("-o,--out", out_dir, "artifact directory");
    simulate_cmd->callback([&] {
        status = guarded([&] {
            const Config cfg = scenario_arg(scenario_ref, sets);
            cfg.validate();
            const ReactionSpec f = reaction_from(cfg);
            const Trajectory tr = simulate(sim_config_from(cfg, f), f);
            const fs::path dir = artifact_dir(cfg, out_dir);
            fs::create_directories(dir);
            std::ofstream snaps(dir / "snapshots.csv");
            write_snapshots_csv(snaps, tr.snapshots);
            std::ofstream meta(dir / "meta.json");
            meta << json{{"scenario", cfg.str("scenario", "name")}, {"stats", to_json(tr.stats)}, {"config", cfg.text()}}
                        .dump(2)
                 << "\n";
            std::cout << "wrote " << tr.snapshots.size() << " snapshots to " << (dir / "snapshots.csv").string() << "\n";
            return ok;
        });
    });

    // diagnose
    auto* diagnose = app.add_subcommand("diagnose", "interface trace and bounds from snapshots.csv");
    std::string snaps_in;
    double fit_burn = 0.5;
    diagnose->add_option("snapshots", snaps_in, "snapshots.csv")->required()->check(CLI::ExistingFile);
    add_reaction(diagnose);
    diagnose->add_option("-o,--out", out_dir, "directory for trace.csv and verdicts.json");
    diagnose->add_option("--burn-in", fit_burn, "discarded leading fraction for the width fit");
    diagnose->callback([&] {
        status = guarded([&] {
            const ReactionSpec f = reaction_arg(reaction, params);
            const auto snaps = read_snapshots_csv(snaps_in);
            const auto variant =
                f.kind() == ReactionKind::time_dependent ? HypothesisVariant::time : HypothesisVariant::space;
            const double c0 = front_speed(f.envelope().f0).speed;
            const VerdictReport hyp = check_front_hypothesis(f.envelope(), c0, variant);
            std::vector<VerdictReport> vs{hyp};
            TraceOptions to;
            std::optional<DerivedConstants> dc;
            if (hyp.pass) {
                dc = derive_constants(f.envelope(), c0, variant);
                to = trace_options(*dc, f.envelope(), true);
            } else {
                to.x_level = 0.5 * (f.envelope().theta0 + 1.0);
            }
            const InterfaceTrace tr = trace_interfaces(snaps, to);
            const fs::path dir = out_dir.empty() ? fs::path(snaps_in).parent_path() : fs::path(out_dir);
            if (!dir.empty()) fs::create_directories(dir);
            std::ofstream tout(dir / "trace.csv");
            write_trace_csv(tout, tr);
            json fits = json::array();
            for (std::size_t e = 0; e < tr.eps.size(); ++e) {
                try {
                    const WidthFit wf = width_growth_fit(tr, e, fit_burn);
                    fits.push_back({{"eps", tr.eps[e]}, {"slope", wf.fit.slope}, {"samples", wf.samples}});
                } catch (const FrontlabError&) {
                    fits.push_back({{"eps", tr.eps[e]}, {"slope", nullptr}});
                }
                if (dc) vs.push_back(check_width_bound(tr, *dc, e));
            }
            if (dc) vs.push_back(check_y_minus_x_bounded(tr));
            json doc = verdicts_json(vs);
            doc["width_fits"] = fits;
            std::ofstream vout(dir / "verdicts.json");
            vout << doc.dump(2) << "\n";
            print_verdicts("diagnose", vs);
            return exit_status_of(doc) == 0 ? ok : verdict_fail;
        });
    });

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "calibrate a counterexample: spatial or temporal");
    std::string which;
    double cal_dx = 0.0, K0 = 1.0, delta = 0.0, cubic_a = 0.25;
    calibrate->add_option("which", which, "spatial | temporal")->required()->check(CLI::IsMember({"spatial", "temporal"}));
    calibrate->add_option("--dx", cal_dx, "grid spacing (default 0.05 spatial, 0.1 temporal)");
    calibrate->add_option("--K0", K0, "first K of the doubling search");
    calibrate->add_option("--delta", delta, "spatial time scale; 0 selects the default");
    calibrate->add_option("--base-a", cubic_a, "cubic threshold of the spatial base");
    calibrate->add_option("-o,--out", out_dir, "directory for calibration.json");
    calibrate->callback([&] {
        status = guarded([&] {
            json doc;
            bool pass = false;
            if (which == "spatial") {
                SpatialCalibrationOptions o;
                if (cal_dx > 0.0) o.dx = cal_dx;
                const auto cal = calibrate_spatial_counterexample(make_cubic_bistable(cubic_a).envelope(), delta, K0, o);
                json trials = json::array();
                for (const auto& [k, p] : cal.K_trials) trials.push_back({{"K", k}, {"pass", p}});
                doc = {{"kind", "spatial"}, {"K", cal.K}, {"delta", cal.geo.delta}, {"a", cal.geo.a},
                       {"period", cal.geo.period}, {"m", cal.geo.m}, {"kappa", cal.geo.kappa}, {"p0", cal.geo.p0},
                       {"K_trials", trials}, {"heat_mass", to_json(cal.heat_mass)},
                       {"activation", to_json(cal.activation)}, {"iterated", to_json(cal.iterated)}};
                pass = cal.pass();
            } else {
                TemporalCalibrationOptions o;
                if (cal_dx > 0.0) o.dx = cal_dx;
                o.K0 = K0;
                const auto cal = calibrate_temporal_counterexample(o);
                json trials = json::array();
                for (const auto& [k, p] : cal.K_trials) trials.push_back({{"K", k}, {"pass", p}});
                doc = {{"kind", "temporal"}, {"M", cal.M}, {"a", cal.a}, {"K", cal.K}, {"delta", cal.delta},
                       {"M_trials", cal.M_trials}, {"K_trials", trials},
                       {"items", {to_json(cal.item_i), to_json(cal.item_ii), to_json(cal.item_iii), to_json(cal.item_iv)}}};
                pass = cal.pass();
            }
            doc["pass"] = pass;
            const fs::path dir = out_dir.empty() ? output_root() / ("calibrate_" + which) : fs::path(out_dir);
            fs::create_directories(dir);
            std::ofstream out(dir / "calibration.json");
            out << doc.dump(2) << "\n";
            std::cout << doc.dump(2) << "\n";
            return pass ? ok : verdict_fail;
        });
    });

    // run
    auto* run = app.add_subcommand("run", "run a scenario and write its artifacts");
    run->add_option("scenario", scenario_ref, "bundled scenario name or INI file")->required();
    run->add_option("--set", sets, "override section.key=value (repeatable)");
    run->add_option("-o,--out", out_dir, "artifact directory (default $FRONTLAB_OUT/<name>)");
    run->callback([&] { status = guarded([&] { return run_one(scenario_arg(scenario_ref, sets), out_dir, false); }); });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run several scenarios on a bounded worker pool");
    std::vector<std::string> refs;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    sweep->add_option("scenarios", refs, "bundled names or INI files (default: whole catalog)");
    sweep->add_option("-j,--jobs", jobs, "worker count")->check(CLI::PositiveNumber);
    sweep->add_option("--set", sets, "override applied to every scenario");
    sweep->callback([&] {
        if (refs.empty())
            for (const auto& e : scenario_catalog()) refs.emplace_back(e.name);
        std::vector<int> codes(refs.size(), ok);
        std::atomic<std::size_t> next{0};
        std::mutex io;
        auto worker = [&] {
            for (std::size_t i; (i = next++) < refs.size();) {
                codes[i] = guarded([&] { return run_one(scenario_arg(refs[i], sets), "", true); });
                std::lock_guard<std::mutex> lock(io);
                std::cout << refs[i] << "  exit " << codes[i] << "\n";
            }
        };
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < std::min<std::size_t>(jobs, refs.size()); ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        status = *std::max_element(codes.begin(), codes.end());
    });

    // list
    auto* list = app.add_subcommand("list", "bundled scenarios, reactions or config defaults");
    bool show_defaults = false, show_reactions = false;
    std::string show;
    list->add_flag("--defaults", show_defaults, "print the config defaults table");
    list->add_flag("--reactions", show_reactions, "print registered reaction names");
    list->add_option("--show", show, "print the INI of one bundled scenario");
    list->callback([&] {
        status = guarded([&] {
            if (!show.empty()) {
                for (const auto& e : scenario_catalog())
                    if (show == e.name) { std::cout << e.ini; return ok; }
                throw std::invalid_argument("unknown scenario '" + show + "'");
            }
            if (show_defaults) {
                for (const auto& d : config_defaults())
                    std::cout << "[" << d.section << "] " << d.key << " = " << d.value << "    ; " << d.doc << "\n";
                return ok;
            }
            if (show_reactions) {
                for (const auto& n : reaction_names()) std::cout << n << "\n";
                return ok;
            }
            for (const auto& e : scenario_catalog()) std::cout << e.name << "  " << e.claim << "\n";
            return ok;
        });
    });

    // export
    auto* exp = app.add_subcommand("export", "single-file markdown report of an artifact directory");
    std::string art_dir, report_out;
    exp->add_option("dir", art_dir, "artifact directory")->required();
    exp->add_option("-o,--out", report_out, "output file (default <dir>/report.md)");
    exp->callback([&] {
        status = guarded([&] {
            const std::string md = export_report(art_dir);
            const fs::path out = report_out.empty() ? fs::path(art_dir) / "report.md" : fs::path(report_out);
            std::ofstream(out) << md;
            std::cout << "wrote " << out.string() << "\n";
            return exit_status_of(json::parse(std::ifstream(fs::path(art_dir) / "verdicts.json")));
        });
    });

    // reaction dump
    auto* rx = app.add_subcommand("reaction", "reaction utilities");
    auto* dump = rx->add_subcommand("dump", "sample f(coord, u) on a grid as CSV");
    add_reaction(dump);
    std::vector<double> coords{0.0};
    int points = 101;
    dump->add_option("--coord", coords, "coordinates (x or t) to sample");
    dump->add_option("--points", points, "u samples on [0, 1]")->check(CLI::Range(2, 1000000));
    rx->require_subcommand(1);
    dump->callback([&] {
        status = guarded([&] {
            const ReactionSpec f = reaction_arg(reaction, params);
            Table t{{"coord", "u", "f", "f0", "f1"}, {}};
            for (double c : coords)
                for (int i = 0; i < points; ++i) {
                    const double u = static_cast<double>(i) / (points - 1);
                    t.rows.push_back({c, u, f(c, u), f.envelope().f0(u), f.envelope().f1(u)});
                }
            write_table_csv(std::cout, t);
            return ok;
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : schema;
    }
    return status;
}
