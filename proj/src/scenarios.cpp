#include "frontlab/scenarios.hpp"

#include "frontlab/calibrate.hpp"
#include "frontlab/counterexamples.hpp"
#include "frontlab/reaction.hpp"
#include "frontlab/wavesolve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace frontlab {

using nlohmann::json;

bool ScenarioResult::pass() const {
    return !verdicts.empty() &&
           std::all_of(verdicts.begin(), verdicts.end(), [](const VerdictReport& v) { return v.pass; });
}

const VerdictReport* ScenarioResult::find(const std::string& verdict) const {
    for (const auto& v : verdicts)
        if (v.name == verdict) return &v;
    return nullptr;
}

json to_json(const VerdictReport& rep) {
    json w = json::array();
    for (const auto& x : rep.witnesses) w.push_back({{"coordinate", x.coordinate}, {"value", x.value}, {"label", x.label}});
    json vals = json::object();
    for (const auto& [k, v] : rep.values) vals[k] = std::isfinite(v) ? json(v) : json(nullptr);
    json out = {{"name", rep.name}, {"pass", rep.pass}, {"margin", std::isfinite(rep.margin) ? json(rep.margin) : json(nullptr)},
                {"witnesses", w}, {"values", vals}};
    if (!rep.detail.empty()) out["detail"] = rep.detail;
    return out;
}

json to_json(const SimStats& s) {
    return {{"steps", s.steps},         {"min_dut", s.min_dut},           {"min_u", s.min_u},
            {"max_u", s.max_u},         {"breaches", s.breaches},         {"translations", s.translations},
            {"growths", s.growths},     {"dt_min", s.dt_min},             {"dt_max", s.dt_max},
            {"wall_seconds", s.wall_seconds}};
}

// ------------------------------------------------------------ config plumbing

ReactionSpec reaction_from(const Config& cfg) {
    try {
        return make_reaction(cfg.reaction_name(), cfg.reaction_params());
    } catch (const std::invalid_argument& e) {
        throw SchemaError("reaction", 0, cfg.origin() + ": [reaction] " + e.what());
    }
}

InitialCondition initial_from(const Config& cfg, const std::string& sec, const ReactionSpec& f) {
    InitialCondition ic;
    const std::string kind = cfg.str(sec, "kind");
    if (kind == "front_like") ic.kind = InitialCondition::Kind::front_like;
    else if (kind == "spark_like") ic.kind = InitialCondition::Kind::spark_like;
    else if (kind == "hump_v") ic.kind = InitialCondition::Kind::hump_v;
    else throw SchemaError(sec + ".kind", 0, cfg.origin() + ": [" + sec + "] kind: unknown initial data '" + kind + "'");
    ic.a = cfg.num(sec, "a");
    ic.Y = cfg.num(sec, "Y");
    ic.mu = cfg.num(sec, "mu");
    ic.beta = cfg.num(sec, "beta");
    ic.L = cfg.num(sec, "L");
    ic.shift = cfg.num(sec, "shift");
    if (ic.kind == InitialCondition::Kind::hump_v) {
        ic.hump_f0 = f.envelope().f0;
        const double e = cfg.num(sec, "epsilon0");
        ic.epsilon0 = e > 0.0 ? e : select_epsilon0(f.envelope().f0, f.envelope().theta0);
    }
    return ic;
}

SimConfig sim_config_from(const Config& cfg, const ReactionSpec& f, const std::string& initial_section) {
    SimConfig c;
    c.dx = cfg.num("grid", "dx");
    c.dt = cfg.maybe_num("grid", "dt");
    c.x_min = cfg.num("grid", "x_min");
    c.x_max = cfg.num("grid", "x_max");
    const std::string policy = cfg.str("grid", "policy");
    c.policy = policy == "follow" ? WindowPolicy::follow : policy == "grow" ? WindowPolicy::grow : WindowPolicy::fixed;
    c.margin_nodes = static_cast<int>(cfg.integer("grid", "margin_nodes"));
    c.chunk = cfg.num("grid", "chunk");
    c.max_width = cfg.num("grid", "max_width");
    c.t_final = cfg.num("run", "t_final");
    c.snapshot_stride = cfg.num("run", "snapshot_stride");
    c.snapshot_from = cfg.num("run", "snapshot_from");
    c.initial = initial_from(cfg, initial_section, f);
    return c;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

class Stopwatch {
public:
    explicit Stopwatch(ScenarioResult& r) : r_(r), t0_(std::chrono::steady_clock::now()), last_(t0_) {}
    void lap(const std::string& stage) {
        const auto now = std::chrono::steady_clock::now();
        r_.timings.emplace_back(stage, std::chrono::duration<double>(now - last_).count());
        last_ = now;
    }
    double total() const { return seconds_since(t0_); }

private:
    ScenarioResult& r_;
    std::chrono::steady_clock::time_point t0_, last_;
};

VerdictReport runtime_verdict(double seconds, double limit) {
    auto rep = VerdictReport::make("runtime", limit <= 0.0 || seconds < limit,
                                   limit <= 0.0 ? 0.0 : limit - seconds, {{limit, seconds, "wall seconds"}});
    rep.values["seconds"] = seconds;
    rep.values["limit"] = limit;
    return rep;
}

VerdictReport renamed(VerdictReport rep, std::string name) {
    rep.name = std::move(name);
    return rep;
}

double closed_form_cubic_speed(double a) { return std::sqrt(2.0) * (0.5 - a); }

struct FrontContext {
    double c0 = 0.0;
    HypothesisVariant variant = HypothesisVariant::space;
    VerdictReport hypothesis;
    std::optional<DerivedConstants> dc;
};

FrontContext front_context(const ReactionSpec& f) {
    FrontContext fc;
    fc.variant = f.kind() == ReactionKind::time_dependent ? HypothesisVariant::time : HypothesisVariant::space;
    fc.c0 = front_speed(f.envelope().f0).speed;
    fc.hypothesis = check_front_hypothesis(f.envelope(), fc.c0, fc.variant);
    if (fc.hypothesis.pass) fc.dc = derive_constants(f.envelope(), fc.c0, fc.variant);
    return fc;
}

InterfaceTrace compliant_trace(const std::vector<Snapshot>& snaps, const ReactionSpec& f, const FrontContext& fc) {
    if (!fc.dc) throw FrontlabError(ErrorCode::hypothesis_fails, "trace: front hypothesis fails for this reaction");
    return trace_interfaces(snaps, trace_options(*fc.dc, f.envelope(), true));
}

VerdictReport y_minus_x(const InterfaceTrace& tr, double tol) {
    return renamed(check_y_minus_x_bounded(tr, tol), "y_minus_x_bounded");
}

std::vector<Snapshot> within(const std::vector<Snapshot>& traj, double lo, double hi) {
    std::vector<Snapshot> out;
    for (const auto& s : traj)
        if (s.t >= lo - 1e-9 && s.t <= hi + 1e-9) out.push_back(s);
    return out;
}

const Snapshot& snapshot_at(const std::vector<Snapshot>& traj, double t) {
    for (const auto& s : traj)
        if (std::abs(s.t - t) <= 1e-9) return s;
    throw std::logic_error("no snapshot at t = " + std::to_string(t));
}

double expect_factor(const Config& cfg) {
    const std::string e = cfg.str("acceptance", "expect");
    if (e == "pass") return 1.0;
    if (e == "fail") return -1.0;
    throw SchemaError("acceptance.expect", 0, cfg.origin() + ": [acceptance] expect must be pass or fail");
}

std::vector<unsigned long long> seeds_of(const Config& cfg) {
    const auto xs = cfg.list("run", "seeds");
    if (xs.empty()) throw SchemaError("run.seeds", 0, cfg.origin() + ": [run] seeds is mandatory for this kind");
    std::vector<unsigned long long> out;
    for (double x : xs) {
        if (x < 0.0 || x != std::floor(x))
            throw SchemaError("run.seeds", 0, cfg.origin() + ": [run] seeds must be non-negative integers");
        out.push_back(static_cast<unsigned long long>(x));
    }
    return out;
}

json trace_summary(const WidthFit& fit) {
    return {{"slope", fit.fit.slope}, {"intercept", fit.fit.intercept}, {"samples", fit.samples},
            {"t_from", fit.t_from}, {"t_to", fit.t_to}};
}

// ------------------------------------------------------------ kinds

void run_front_speed(const Config& cfg, ScenarioResult& r) {
    const ReactionSpec f = reaction_from(cfg);
    if (f.kind() != ReactionKind::homogeneous) throw std::invalid_argument("front_speed needs a homogeneous reaction");
    const auto t0 = std::chrono::steady_clock::now();
    const SpeedResult sr = front_speed(f);
    const double secs = seconds_since(t0);
    r.summary["speed"] = sr.speed;
    r.summary["bracket"] = {sr.bracket_lo, sr.bracket_hi};
    r.summary["iterations"] = sr.iterations;
    r.summary["profile_residual"] = sr.residual_max;
    if (cfg.reaction_name() == "cubic_bistable") {
        const double a = f.param("a").value();
        const double exact = closed_form_cubic_speed(a);
        const double err = std::abs(sr.speed - exact);
        const double tol = cfg.num("acceptance", "speed_tol");
        auto rep = VerdictReport::make("speed_oracle", err <= tol, tol - err, {{a, sr.speed, "computed speed"}});
        rep.values["exact"] = exact;
        rep.values["error"] = err;
        r.verdicts.push_back(rep);
        r.summary["exact"] = exact;
    } else {
        const double width = sr.bracket_hi - sr.bracket_lo;
        r.verdicts.push_back(VerdictReport::make("speed_bracket", width <= 1e-6, 1e-6 - width,
                                                 {{sr.bracket_lo, sr.bracket_hi, "bracket"}}));
    }
    r.verdicts.push_back(runtime_verdict(secs, cfg.num("acceptance", "max_seconds")));

    Table prof{{"s", "W", "dW"}, {}};
    const auto& W = sr.profile.values();
    const std::size_t stride = std::max<std::size_t>(1, W.size() / 4000);
    for (std::size_t i = 0; i < W.size(); i += stride) {
        const double s = sr.profile.s_first() + sr.profile.step() * static_cast<double>(i);
        prof.rows.push_back({s, W[i], sr.profile.derivative(s)});
    }
    r.tables.emplace_back("profile.csv", std::move(prof));
}

void run_pde_speed(const Config& cfg, ScenarioResult& r, Stopwatch& sw) {
    const ReactionSpec f = reaction_from(cfg);
    const FrontContext fc = front_context(f);
    double c_ref = fc.c0;
    std::string oracle = "shooting";
    if (cfg.reaction_name() == "cubic_bistable") {
        c_ref = closed_form_cubic_speed(f.param("a").value());
        oracle = "closed_form";
    }
    r.summary["c_reference"] = c_ref;
    r.summary["oracle"] = oracle;
    sw.lap("setup");

    const double t_final = cfg.num("run", "t_final");
    const double fit_from = cfg.num("run", "fit_from") > 0.0 ? cfg.num("run", "fit_from") : 0.5 * t_final;
    auto measure = [&](double dx, const std::string& label, double tol) {
        SimConfig sc = sim_config_from(cfg, f);
        sc.dx = dx;
        const Trajectory tr = simulate(sc, f);
        InterfaceTrace trace = compliant_trace(tr.snapshots, f, fc);
        const LinearFit lf = level_speed(trace.times, trace.x_half, fit_from);
        const double rel = std::abs(lf.slope - c_ref) / c_ref;
        auto rep = VerdictReport::make(label, rel <= tol, tol - rel, {{dx, lf.slope, "fitted speed"}});
        rep.values["speed"] = lf.slope;
        rep.values["relative_error"] = rel;
        rep.values["dx"] = dx;
        rep.values["wall_seconds"] = tr.stats.wall_seconds;
        r.verdicts.push_back(rep);
        r.summary[label] = {{"speed", lf.slope}, {"relative_error", rel}, {"stats", to_json(tr.stats)}};
        return std::make_pair(tr, trace);
    };
    auto [traj, trace] = measure(cfg.num("grid", "dx"), "speed_dx", cfg.num("acceptance", "rel_tol"));
    sw.lap("coarse run");
    r.verdicts.push_back(y_minus_x(trace, cfg.num("acceptance", "yx_tol")));
    const double fine = cfg.num("run", "fine_dx");
    if (fine > 0.0) {
        measure(fine, "speed_fine_dx", cfg.num("acceptance", "fine_rel_tol"));
        sw.lap("fine run");
    }
    r.verdicts.push_back(runtime_verdict(sw.total(), cfg.num("acceptance", "max_seconds")));
    r.snapshots = std::move(traj.snapshots);
    r.trace = std::move(trace);
}

void run_front_convergence(const Config& cfg, ScenarioResult& r, Stopwatch& sw) {
    const ReactionSpec f = reaction_from(cfg);
    const FrontContext fc = front_context(f);
    r.verdicts.push_back(renamed(fc.hypothesis, "front_hypothesis"));
    const double th1 = f.envelope().theta1, th0 = f.envelope().theta0;
    r.verdicts.push_back(VerdictReport::make("thresholds_ordered", th1 < th0, th0 - th1, {{th1, th0, "theta1, theta0"}}));
    r.summary["c0"] = fc.c0;
    r.summary["hypothesis_margin"] = fc.hypothesis.margin;
    sw.lap("setup");
    if (!fc.dc) return;

    const double T = cfg.num("run", "t_final");
    const double window = cfg.num("run", "shift_window");
    const auto points = cfg.integer("run", "curve_points");

    SimConfig ref = sim_config_from(cfg, f, "initial");
    ref.t_final = T + window;
    ref.snapshot_stride = cfg.num("run", "compare_stride");
    ref.snapshot_from = 0.0;
    const Trajectory w = simulate(ref, f);
    sw.lap("reference run");

    SimConfig alt = sim_config_from(cfg, f, "initial_alt");
    for (long long k = 1; k <= points; ++k) alt.snapshot_times.push_back(T * static_cast<double>(k) / points);
    Trajectory u = simulate(alt, f);
    sw.lap("second run");

    Table curve{{"t", "shift", "sup_norm"}, {}};
    ShiftResult last;
    for (long long k = 1; k <= points; ++k) {
        const double t = T * static_cast<double>(k) / points;
        last = time_shift_distance(snapshot_at(u.snapshots, t), within(w.snapshots, t - window, t + window));
        curve.rows.push_back({t, last.shift, last.sup_norm});
    }
    const double tol = cfg.num("acceptance", "sup_tol");
    auto conv = VerdictReport::make("shift_convergence", last.sup_norm < tol, tol - last.sup_norm,
                                    {{T, last.sup_norm, "sup norm after the best time shift"}});
    conv.values["shift"] = last.shift;
    conv.values["sup_norm"] = last.sup_norm;
    r.verdicts.push_back(conv);
    r.tables.emplace_back("shift_curve.csv", std::move(curve));

    InterfaceTrace trace = compliant_trace(within(u.snapshots, 0.0, T), f, fc);
    std::vector<VerdictReport> bounds;
    for (std::size_t e = 0; e < trace.eps.size(); ++e) bounds.push_back(check_width_bound(trace, *fc.dc, e));
    r.verdicts.push_back(combine("width_bound", bounds));
    for (const auto& b : bounds) r.summary["width_bounds"].push_back(to_json(b));
    r.verdicts.push_back(y_minus_x(trace, cfg.num("acceptance", "yx_tol")));
    sw.lap("diagnostics");
    r.verdicts.push_back(runtime_verdict(sw.total(), cfg.num("acceptance", "max_seconds")));
    r.summary["stats"] = to_json(u.stats);
    r.snapshots = within(u.snapshots, 0.0, T);
    r.trace = std::move(trace);
}

void run_spark(const Config& cfg, ScenarioResult& r, Stopwatch& sw) {
    const ReactionSpec f = reaction_from(cfg);
    const FrontContext fc = front_context(f);
    r.verdicts.push_back(renamed(fc.hypothesis, "front_hypothesis"));
    sw.lap("setup");
    if (!fc.dc) return;
    const double T = cfg.num("run", "t_final");
    const double window = cfg.num("run", "shift_window");
    const double stride = cfg.num("run", "compare_stride");

    SimConfig sc = sim_config_from(cfg, f, "initial");
    if (sc.initial.kind != InitialCondition::Kind::spark_like)
        throw SchemaError("initial.kind", 0, cfg.origin() + ": [initial] kind must be spark_like here");
    const Trajectory spark = simulate(sc, f);
    sw.lap("spark run");

    // right-moving reference front and its mirror image moving left
    SimConfig ref = sim_config_from(cfg, f, "initial_alt");
    ref.policy = WindowPolicy::follow;
    ref.t_final = T + window;
    ref.snapshot_stride = stride;
    ref.snapshot_from = T - window;
    const Trajectory w = simulate(ref, f);

    SimConfig mir = ref;
    mir.policy = WindowPolicy::grow;
    const InitialCondition& ic = ref.initial;
    mir.initial = InitialCondition{};
    mir.initial.kind = InitialCondition::Kind::table;
    for (double x = -ref.x_max; x <= -ref.x_min + 1e-9; x += ref.dx) {
        mir.initial.xs.push_back(x);
        mir.initial.us.push_back(ic.beta * std::min(1.0, std::exp(-ic.mu * (-x - ic.a - ic.Y))));
    }
    mir.x_min = -ref.x_max;
    mir.x_max = -ref.x_min;
    mir.left = Boundary{BoundaryKind::dirichlet, 0.0};
    mir.right = Boundary{BoundaryKind::dirichlet, 1.0};
    const Trajectory wt = simulate(mir, f);
    sw.lap("reference runs");

    const Snapshot& target = spark.snapshots.back();
    auto distance = [&](double s1, double s2) {
        double worst = 0.0;
        for (std::size_t j = 0; j < target.u.size(); ++j) {
            const double x = target.x_at(j);
            const double comp = trajectory_value(w.snapshots, s1, x) + trajectory_value(wt.snapshots, s2, x) - 1.0;
            worst = std::max(worst, std::abs(target.u[j] - comp));
        }
        return worst;
    };
    const double lo = T - window, hi = T + window;
    auto best_along = [&](const std::function<double(double)>& g) {
        const int n = 161;
        double best = lo, best_v = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            const double s = lo + (hi - lo) * k / (n - 1);
            const double v = g(s);
            if (v < best_v) { best_v = v; best = s; }
        }
        const double h = (hi - lo) / (n - 1);
        return golden_min(g, std::max(lo, best - h), std::min(hi, best + h), 1e-6);
    };
    double s1 = T, s2 = T;
    for (int round = 0; round < 3; ++round) {
        s1 = best_along([&](double s) { return distance(s, s2); });
        s2 = best_along([&](double s) { return distance(s1, s); });
    }
    const double d = distance(s1, s2);
    const double tol = cfg.num("acceptance", "sup_tol");
    auto rep = VerdictReport::make("spark_decomposition", d < tol, tol - d, {{T, d, "sup norm against w + w~ - 1"}});
    rep.values["shift_right"] = s1 - T;
    rep.values["shift_left"] = s2 - T;
    rep.values["sup_norm"] = d;
    r.verdicts.push_back(rep);

    r.summary["stats"] = to_json(spark.stats);
    sw.lap("diagnostics");
    r.verdicts.push_back(runtime_verdict(sw.total(), cfg.num("acceptance", "max_seconds")));
    r.snapshots = spark.snapshots;
}

json geometry_json(const SpatialGeometry& g) {
    return {{"theta0", g.theta0}, {"theta0_prime", g.theta0_prime}, {"p0", g.p0},       {"period", g.period},
            {"p_min", g.p_min},   {"m", g.m},                       {"x_b", g.x_b},     {"b", g.b},
            {"kappa", g.kappa},   {"delta", g.delta},               {"a", g.a},         {"energy_drift", g.profile.energy_drift}};
}

void run_spatial(const Config& cfg, ScenarioResult& r, Stopwatch& sw) {
    const ReactionSpec base = reaction_from(cfg);
    if (base.kind() != ReactionKind::homogeneous) throw std::invalid_argument("spatial_terrace needs a homogeneous base");
    SpatialCalibrationOptions co;
    co.dx = cfg.num("grid", "dx");
    const SpatialCalibration cal = calibrate_spatial_counterexample(base.envelope(), cfg.num("run", "delta"),
                                                                    cfg.num("run", "K0"), co);
    sw.lap("calibration");
    r.verdicts.push_back(cal.heat_mass);
    r.verdicts.push_back(cal.activation);
    r.verdicts.push_back(cal.iterated);
    json trials = json::array();
    for (const auto& [k, ok] : cal.K_trials) trials.push_back({{"K", k}, {"pass", ok}});
    r.calibration = {{"kind", "spatial"}, {"K", cal.K}, {"geometry", geometry_json(cal.geo)}, {"K_trials", trials},
                     {"heat_mass", to_json(cal.heat_mass)}, {"activation", to_json(cal.activation)},
                     {"iterated", to_json(cal.iterated)}};
    if (!cal.pass()) return;

    TerraceOptions to;
    to.dx = co.dx;
    to.t_final = cfg.num("run", "t_final");
    to.snapshot_stride = cfg.num("run", "snapshot_stride");
    const SpatialTerrace ter = run_spatial_terrace(cal, to);
    sw.lap("terrace run");
    for (const auto* v : {&ter.slope, &ter.minorant, &ter.tail_bound, &ter.supersolution, &ter.below_envelope})
        r.verdicts.push_back(*v);

    const double c0 = front_speed(base.envelope().f0).speed;
    const ControlRun ctl = run_terrace_control(base, cal.geo, ter.epsilon0, to);
    sw.lap("control run");
    const double cap = cfg.num("acceptance", "control_factor") * c0;
    const double cs = std::abs(ctl.fit.fit.slope);
    auto rep = VerdictReport::make("control_slope", cs < cap, cap - cs, {{ctl.fit.t_to, ctl.fit.fit.slope, "fitted slope"}});
    rep.values["c0"] = c0;
    r.verdicts.push_back(rep);
    r.verdicts.push_back(runtime_verdict(sw.total(), cfg.num("acceptance", "max_seconds")));

    r.calibration["epsilon0"] = ter.epsilon0;
    r.calibration["minorant_rate"] = ter.minorant_rate;
    r.summary["terrace_fit"] = trace_summary(ter.fit);
    r.summary["control_fit"] = trace_summary(ctl.fit);
    r.summary["terrace_stats"] = to_json(ter.stats);
    r.trace = ter.trace;
}

void run_temporal(const Config& cfg, ScenarioResult& r, Stopwatch& sw) {
    TemporalCalibrationOptions co;
    co.dx = cfg.num("grid", "dx");
    co.K0 = cfg.num("run", "K0");
    const TemporalCalibration cal = calibrate_temporal_counterexample(co);
    sw.lap("calibration");
    for (const auto* v : {&cal.item_i, &cal.item_ii, &cal.item_iii, &cal.item_iv}) r.verdicts.push_back(*v);
    json trials = json::array();
    for (const auto& [k, ok] : cal.K_trials) trials.push_back({{"K", k}, {"pass", ok}});
    r.calibration = {{"kind", "temporal"}, {"M", cal.M},         {"a", cal.a},
                     {"K", cal.K},         {"delta", cal.delta}, {"M_trials", cal.M_trials},
                     {"K_trials", trials}, {"items", {to_json(cal.item_i), to_json(cal.item_ii), to_json(cal.item_iii),
                                                      to_json(cal.item_iv)}}};
    if (!cal.pass()) return;

    TemporalTerraceOptions to;
    to.dx = co.dx;
    to.blocks = static_cast<int>(cfg.integer("run", "blocks"));
    const TemporalTerrace ter = run_temporal_terrace(cal, to);
    sw.lap("terrace run");
    for (const auto* v : {&ter.per_block, &ter.minorant, &ter.upper_bound, &ter.lower_bound}) r.verdicts.push_back(*v);
    r.verdicts.push_back(runtime_verdict(sw.total(), cfg.num("acceptance", "max_seconds")));
    Table widths{{"t", "width", "gain"}, {}};
    for (std::size_t j = 0; j < ter.times.size(); ++j)
        widths.rows.push_back({ter.times[j], ter.width[j], j == 0 ? std::nan("") : ter.gains[j - 1]});
    r.tables.emplace_back("widths.csv", std::move(widths));
    r.calibration["A"] = ter.A;
    r.calibration["B"] = ter.B;
    r.summary["terrace_stats"] = to_json(ter.stats);
}

std::string format_eta(double e) {
    std::ostringstream os;
    os << e;
    return os.str();
}

void run_ignition(const Config& cfg, ScenarioResult& r) {
    const ReactionSpec f = reaction_from(cfg);
    const double c0 = front_speed(f.envelope().f0).speed;
    const double zeta = c0 * c0 / 8.0;
    const VerdictReport chk = check_ignition_hypothesis(f, zeta, 0.0);
    r.summary["check"] = to_json(chk);
    r.summary["c0"] = c0;
    const double sign = expect_factor(cfg);
    if (sign > 0.0) {
        r.verdicts.push_back(chk);
    } else {
        const bool ok = !chk.pass && !chk.witnesses.empty();
        auto rep = VerdictReport::make("violation_detected", ok, ok ? 1.0 : -1.0, chk.witnesses,
                                       "largest admissible eta " + format_eta(chk.values.at("eta_star")));
        rep.values = chk.values;
        r.verdicts.push_back(rep);
    }
}

void run_pulsating(const Config& cfg, ScenarioResult& r, Stopwatch& sw) {
    const ReactionSpec f = reaction_from(cfg);
    const FrontContext fc = front_context(f);
    sw.lap("setup");
    const double period = cfg.num("run", "period") > 0.0 ? cfg.num("run", "period") : f.period().value_or(0.0);
    if (!(period > 0.0)) throw SchemaError("run.period", 0, cfg.origin() + ": no spatial period available");
    const double T = cfg.num("run", "t_final");
    const double fit_from = cfg.num("run", "fit_from") > 0.0 ? cfg.num("run", "fit_from") : 0.5 * T;
    SimConfig sc = sim_config_from(cfg, f);
    const Trajectory tr = simulate(sc, f);
    sw.lap("run");
    InterfaceTrace trace = compliant_trace(tr.snapshots, f, fc);
    const LinearFit lf = level_speed(trace.times, trace.x_half, fit_from);
    const double c = lf.slope;
    const std::vector<Snapshot> late = within(tr.snapshots, fit_from, T);
    VerdictReport rep = pulsating_check_space(late, period, c, fit_from, cfg.num("acceptance", "sup_tol"));
    rep.name = "pulsating_identity";
    rep.values["speed"] = c;
    r.verdicts.push_back(rep);
    r.verdicts.push_back(y_minus_x(trace, cfg.num("acceptance", "yx_tol")));
    sw.lap("diagnostics");
    r.verdicts.push_back(runtime_verdict(sw.total(), cfg.num("acceptance", "max_seconds")));
    r.summary["speed"] = c;
    r.summary["period"] = period;
    r.summary["c0_lower_envelope"] = fc.c0;
    r.summary["stats"] = to_json(tr.stats);
    r.snapshots = tr.snapshots;
    r.trace = std::move(trace);
}

void run_ergodic(const Config& cfg, ScenarioResult& r, Stopwatch& sw) {
    r.seeds = seeds_of(cfg);
    ErgodicOptions eo;
    eo.n_max = static_cast<int>(cfg.integer("run", "n_max"));
    eo.dx = cfg.num("grid", "dx");
    eo.t_max = cfg.num("run", "t_max");
    Table seeds{{"seed", "speed", "speed_increment", "tau_n"}, {}};
    std::vector<double> speeds;
    std::vector<VerdictReport> sub;
    for (auto seed : r.seeds) {
        auto params = cfg.reaction_params();
        params["seed"] = static_cast<double>(seed);
        const ReactionSpec f = make_reaction(cfg.reaction_name(), params);
        const double cell = f.param("cell_period").value_or(f.period().value_or(1.0));
        const ErgodicResult er = ergodic_speed(f, cell, eo);
        speeds.push_back(er.speed);
        sub.push_back(renamed(er.subadditivity, "subadditivity_seed_" + std::to_string(seed)));
        seeds.rows.push_back({static_cast<double>(seed), er.speed, er.speed_increment, er.tau.back()});
        sw.lap("seed " + std::to_string(seed));
    }
    const SeedSpread sp = seed_spread(speeds);
    const double tol = cfg.num("acceptance", "spread_tol");
    auto rep = VerdictReport::make("seed_spread", sp.relative_spread < tol, tol - sp.relative_spread,
                                   {{sp.mean, sp.relative_spread, "relative spread"}});
    rep.values["mean"] = sp.mean;
    rep.values["relative_spread"] = sp.relative_spread;
    r.verdicts.push_back(rep);
    r.verdicts.push_back(combine("subadditivity", sub));
    r.verdicts.push_back(runtime_verdict(sw.total(), cfg.num("acceptance", "max_seconds")));
    r.tables.emplace_back("seeds.csv", std::move(seeds));
    r.summary["mean_speed"] = sp.mean;
    r.summary["relative_spread"] = sp.relative_spread;
}

SimState random_state(std::mt19937_64& rng, std::size_t n, double dx) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SimState s;
    s.dx = dx;
    s.x0 = -0.5 * dx * static_cast<double>(n - 1);
    s.u.resize(n);
    for (auto& v : s.u) v = unit(rng);
    return s;
}

void run_properties(const Config& cfg, ScenarioResult& r, Stopwatch& sw) {
    const ReactionSpec f = reaction_from(cfg);
    r.seeds = seeds_of(cfg);
    std::mt19937_64 rng(r.seeds.front());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double dx = cfg.num("grid", "dx");
    const double dt = cfg.maybe_num("grid", "dt").value_or(default_dt(dx, f.lipschitz_K()));
    const double tol = cfg.num("acceptance", "compare_tol");

    // ordered pairs stay ordered
    const auto pairs = cfg.integer("run", "pairs");
    const auto pair_steps = cfg.integer("run", "pair_steps");
    long long violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    Witness worst_w{0.0, 0.0, "min (v - u)"};
    for (long long p = 0; p < pairs; ++p) {
        SimState lo = random_state(rng, 200, dx);
        SimState hi = lo;
        for (auto& v : hi.u) v = std::min(1.0, v + 0.2 * unit(rng));
        const double t0 = 10.0 * unit(rng);
        lo.t = hi.t = t0;
        Stepper a, b;
        for (long long k = 0; k < pair_steps; ++k) {
            a.advance(lo, f, dt);
            b.advance(hi, f, dt);
            for (std::size_t i = 0; i < lo.u.size(); ++i) {
                const double gap = hi.u[i] - lo.u[i];
                if (gap < -tol) ++violations;
                if (gap < worst) {
                    worst = gap;
                    worst_w = {lo.x_at(i), gap, "pair " + std::to_string(p) + " step " + std::to_string(k)};
                }
            }
        }
    }
    auto cmp = VerdictReport::make("comparison_principle", violations == 0, worst + tol, {worst_w});
    cmp.values["pairs"] = static_cast<double>(pairs);
    cmp.values["violations"] = static_cast<double>(violations);
    r.verdicts.push_back(cmp);
    sw.lap("comparison");

    // bounds under a long run
    const auto steps = cfg.integer("run", "bound_steps");
    SimState s = random_state(rng, 64, dx);
    Stepper st;
    double lo_seen = 1.0, hi_seen = 0.0;
    for (long long k = 0; k < steps; ++k) {
        st.advance(s, f, dt);
        const auto [mn, mx] = std::minmax_element(s.u.begin(), s.u.end());
        lo_seen = std::min(lo_seen, *mn);
        hi_seen = std::max(hi_seen, *mx);
    }
    const bool inside = lo_seen >= 0.0 && hi_seen <= 1.0;
    auto bnd = VerdictReport::make("bounds_preserved", inside, std::min(lo_seen, 1.0 - hi_seen),
                                   {{lo_seen, hi_seen, "min and max over the run"}});
    bnd.values["steps"] = static_cast<double>(steps);
    r.verdicts.push_back(bnd);
    sw.lap("bounds");

    // hump data is a subsolution, so the solution rises
    SimConfig hc = sim_config_from(cfg, f);
    hc.initial.kind = InitialCondition::Kind::hump_v;
    hc.initial.hump_f0 = f.envelope().f0;
    if (!(hc.initial.epsilon0 > 0.0)) hc.initial.epsilon0 = select_epsilon0(f.envelope().f0, f.envelope().theta0);
    hc.track_monotonicity = true;
    hc.snapshot_stride = 0.0;
    const Trajectory ht = simulate(hc, f);
    const double mtol = cfg.num("acceptance", "monotone_tol");
    auto mono = VerdictReport::make("hump_monotone", ht.stats.min_dut >= -mtol, ht.stats.min_dut + mtol,
                                    {{hc.initial.epsilon0, ht.stats.min_dut, "min discrete u_t"}});
    mono.values["min_dut"] = ht.stats.min_dut;
    r.verdicts.push_back(mono);
    sw.lap("hump");
}

void run_stationary(const Config& cfg, ScenarioResult& r) {
    if (cfg.reaction_name() != "wave_blocking_core")
        throw SchemaError("reaction.name", 0, cfg.origin() + ": stationary_residual supports wave_blocking_core");
    const WaveBlockingCore core = make_wave_blocking_core();
    double worst = 0.0, at = 0.0;
    Table t{{"x", "v", "residual"}, {}};
    const double x_min = cfg.num("grid", "x_min"), x_max = cfg.num("grid", "x_max"), dx = cfg.num("grid", "dx");
    for (double x = x_min; x <= x_max + 1e-12; x += dx) {
        const double v = core.v(x);
        const double res = core.v_second(x) + core.g(0.0, v);
        t.rows.push_back({x, v, res});
        if (std::abs(res) > worst) { worst = std::abs(res); at = x; }
    }
    const double tol = cfg.num("acceptance", "residual_tol");
    auto rep = VerdictReport::make("stationary_residual", worst < tol, tol - worst, {{at, worst, "max |v'' + g(v)|"}});
    r.verdicts.push_back(rep);
    r.tables.emplace_back("profile.csv", std::move(t));
}

void run_classification(const Config& cfg, ScenarioResult& r) {
    const ReactionSpec f = reaction_from(cfg);
    const Classification c = classify(f);
    const std::string got = to_string(c.taxonomy);
    const std::string want = cfg.str("acceptance", "expect_taxonomy");
    r.summary["taxonomy"] = got;
    r.summary["inconclusive"] = c.inconclusive;
    r.summary["gamma_margin"] = c.gamma_margin;
    r.summary["detail"] = c.detail;
    const bool ok = want.empty() ? !c.inconclusive : got == want;
    r.verdicts.push_back(VerdictReport::make("taxonomy", ok, ok ? 1.0 : -1.0, {{c.gamma_margin, 0.0, got}},
                                             want.empty() ? "" : "expected " + want));
    r.verdicts.push_back(renamed(validate(f), "validation"));
}

} // namespace

ScenarioResult run_scenario(const Config& cfg) {
    cfg.validate();
    ScenarioResult r;
    r.name = cfg.str("scenario", "name");
    r.kind = cfg.str("scenario", "kind");
    Stopwatch sw(r);
    const std::string& k = r.kind;
    if (k == "front_speed") run_front_speed(cfg, r);
    else if (k == "pde_speed") run_pde_speed(cfg, r, sw);
    else if (k == "front_convergence") run_front_convergence(cfg, r, sw);
    else if (k == "spark_decomposition") run_spark(cfg, r, sw);
    else if (k == "spatial_terrace") run_spatial(cfg, r, sw);
    else if (k == "temporal_terrace") run_temporal(cfg, r, sw);
    else if (k == "ignition_check") run_ignition(cfg, r);
    else if (k == "pulsating") run_pulsating(cfg, r, sw);
    else if (k == "ergodic") run_ergodic(cfg, r, sw);
    else if (k == "properties") run_properties(cfg, r, sw);
    else if (k == "stationary_residual") run_stationary(cfg, r);
    else if (k == "classification") run_classification(cfg, r);
    else throw SchemaError("scenario.kind", 0, cfg.origin() + ": [scenario] kind: unknown kind '" + k + "'");
    r.wall_seconds = sw.total();
    return r;
}

// ------------------------------------------------------------ catalog

const std::vector<CatalogEntry>& scenario_catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"cubic_speed_oracle", "shooting speed of the cubic matches sqrt(2)(1/2 - a)",
         R"([scenario]
kind = front_speed
[reaction]
name = cubic_bistable
a = 0.25
[grid]
dx = 0.05
[acceptance]
speed_tol = 1e-6
max_seconds = 1
)"},
        {"cubic_pde_speed", "simulated front speed of the cubic at two resolutions",
         R"([scenario]
kind = pde_speed
[reaction]
name = cubic_bistable
a = 0.25
[grid]
dx = 0.05
x_min = -30
x_max = 30
policy = follow
[initial]
kind = front_like
mu = 2
[run]
t_final = 150
fit_from = 50
fine_dx = 0.025
[acceptance]
rel_tol = 0.02
fine_rel_tol = 0.005
max_seconds = 60
)"},
        {"periodic_front_convergence", "two front-like runs in a periodic bistable medium merge after a time shift",
         R"([scenario]
kind = front_convergence
[reaction]
name = two_threshold_bistable
a_lo = 0.235
a_hi = 0.25
wavelength = 10
[grid]
dx = 0.05
x_min = -40
x_max = 40
policy = follow
[initial]
kind = front_like
[initial_alt]
kind = front_like
a = -5
Y = 3
mu = 0.5
beta = 0.6
[run]
t_final = 200
shift_window = 40
compare_stride = 0.1
curve_points = 10
[acceptance]
sup_tol = 0.01
max_seconds = 300
)"},
        {"spark_decomposition", "a spreading spark splits into two counter-propagating fronts",
         R"([scenario]
kind = spark_decomposition
[reaction]
name = two_threshold_bistable
a_lo = 0.235
a_hi = 0.25
wavelength = 10
[grid]
dx = 0.05
x_min = -60
x_max = 60
policy = grow
[initial]
kind = spark_like
L = 10
[initial_alt]
kind = front_like
a = 10
[run]
t_final = 200
snapshot_stride = 2
shift_window = 40
compare_stride = 0.1
[acceptance]
sup_tol = 0.01
max_seconds = 300
)"},
        {"spatial_terrace", "calibrated periodic counterexample: the front widens linearly",
         R"([scenario]
kind = spatial_terrace
[reaction]
name = cubic_bistable
a = 0.25
[grid]
dx = 0.05
[run]
t_final = 100
snapshot_stride = 1
[acceptance]
slope_factor = 0.5
control_factor = 0.01
max_seconds = 600
)"},
        {"temporal_terrace", "calibrated time-periodic counterexample: width grows every period",
         R"([scenario]
kind = temporal_terrace
description = the construction is built on g0 and g1; [reaction] names the lower base
[reaction]
name = g0
[grid]
dx = 0.1
[run]
blocks = 50
[acceptance]
max_seconds = 600
)"},
        {"ignition_family_check", "non-vanishing condition holds for a pure ignition reaction",
         R"([scenario]
kind = ignition_check
[reaction]
name = ignition
theta = 0.3
[grid]
dx = 0.05
[acceptance]
expect = pass
)"},
        {"ignition_gap_violator", "non-vanishing condition fails with a witness when the reaction has a gap",
         R"([scenario]
kind = ignition_check
[reaction]
name = ignition_gap_violator
[grid]
dx = 0.05
[acceptance]
expect = fail
)"},
        {"pulsating_ignition", "front in a periodic ignition medium is pulsating",
         R"([scenario]
kind = pulsating
[reaction]
name = periodic_ignition
theta = 0.3
period = 2
amp_lo = 1
amp_hi = 2
[grid]
dx = 0.05
x_min = -30
x_max = 30
policy = follow
[initial]
kind = front_like
[run]
t_final = 200
fit_from = 100
snapshot_from = 100
snapshot_stride = 0.1
[acceptance]
sup_tol = 0.01
max_seconds = 300
)"},
        {"ergodic_speed_spread", "first-passage speeds of random stationary media agree across seeds",
         R"([scenario]
kind = ergodic
[reaction]
name = random_ergodic
[grid]
dx = 0.05
[run]
seeds = 1 2 3 4 5
n_max = 20
[acceptance]
spread_tol = 0.05
max_seconds = 600
)"},
        {"scheme_properties", "order preservation, bounds and monotone hump solutions of the scheme",
         R"([scenario]
kind = properties
[reaction]
name = two_threshold_bistable
a_lo = 0.235
a_hi = 0.25
wavelength = 10
[grid]
dx = 0.05
x_min = -20
x_max = 40
[run]
seeds = 20261018
pairs = 100
pair_steps = 2000
bound_steps = 1000000
t_final = 20
[acceptance]
compare_tol = 1e-12
monotone_tol = 1e-8
)"},
        {"wave_blocking_core", "stationary profile of the blocking core solves v'' + g(v) = 0",
         R"([scenario]
kind = stationary_residual
[reaction]
name = wave_blocking_core
[grid]
dx = 0.01
x_min = -50
x_max = 50
[acceptance]
residual_tol = 1e-10
)"},
        {"bi_envelope_classification", "g1 with K = 0 is classified as a BI reaction",
         R"([scenario]
kind = classification
[reaction]
name = g1
K = 0
[grid]
dx = 0.05
[acceptance]
expect_taxonomy = BI
)"},
    };
    return entries;
}

Config bundled_scenario(const std::string& name) {
    for (const auto& e : scenario_catalog()) {
        if (name == e.name) {
            Config c = Config::parse(e.ini, name);
            if (!c.has("scenario", "name")) c.set("scenario", "name", name);
            return c;
        }
    }
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

} // namespace frontlab
