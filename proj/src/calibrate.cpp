#include "frontlab/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace frontlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SimState state_from(double x_min, double x_max, double dx, const Fn1& u0, Boundary left, Boundary right,
                    double t0 = 0.0) {
    SimState s;
    s.x0 = x_min;
    s.dx = dx;
    s.t = t0;
    const auto n = static_cast<std::size_t>(std::llround((x_max - x_min) / dx)) + 1;
    s.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.u[i] = u0(s.x_at(i));
    s.left = left;
    s.right = right;
    return s;
}

SimConfig run_config(double dx, double t0, double t1, WindowPolicy policy = WindowPolicy::fixed) {
    SimConfig c;
    c.dx = dx;
    c.t_start = t0;
    c.t_final = t1;
    c.policy = policy;
    c.snapshot_stride = 0.0;
    c.margin_nodes = 20;
    c.chunk = 20.0;
    return c;
}

struct Extremum {
    double value;
    double x;
};

/// Over nodes with lo < x < hi (open) or lo <= x <= hi (closed).
Extremum min_on(const Snapshot& s, double lo, double hi, bool open) {
    Extremum e{kInf, 0.0};
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        const double x = s.x_at(i);
        const bool in = open ? (x > lo && x < hi) : (x >= lo && x <= hi);
        if (in && s.u[i] < e.value) e = {s.u[i], x};
    }
    return e;
}

Extremum max_on(const Snapshot& s, double lo, double hi, bool open) {
    Extremum e{-kInf, 0.0};
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        const double x = s.x_at(i);
        const bool in = open ? (x > lo && x < hi) : (x >= lo && x <= hi);
        if (in && s.u[i] > e.value) e = {s.u[i], x};
    }
    return e;
}

const Snapshot& at_time(const Trajectory& tr, double t) {
    for (const auto& s : tr.snapshots)
        if (std::abs(s.t - t) <= 1e-9) return s;
    throw std::logic_error("snapshot missing at requested time");
}

VerdictReport lower_report(const std::string& name, const Extremum& e, double level, double t) {
    auto rep = VerdictReport::make(name, e.value >= level, e.value - level,
                                   {{e.x, e.value, "t=" + std::to_string(t)}});
    rep.values["min"] = e.value;
    rep.values["level"] = level;
    return rep;
}

VerdictReport upper_report(const std::string& name, const Extremum& e, double level, double t) {
    auto rep = VerdictReport::make(name, e.value <= level, level - e.value,
                                   {{e.x, e.value, "t=" + std::to_string(t)}});
    rep.values["max"] = e.value;
    rep.values["level"] = level;
    return rep;
}

} // namespace

// ------------------------------------------------------------ spatial

SpatialCalibration calibrate_spatial_counterexample(const EnvelopePair& base, double delta, double K0,
                                                    const SpatialCalibrationOptions& o) {
    SpatialCalibration cal;
    cal.geo = spatial_geometry(base.f0, base.theta0, delta);
    const SpatialGeometry& g = cal.geo;
    const double th0 = g.theta0, M = g.period, m = g.m;
    const Boundary zero{BoundaryKind::dirichlet, 0.0};
    auto bump = [th0, m](double x) { return std::abs(x) < m ? th0 : 0.0; };

    {
        const ReactionSpec f0 = make_homogeneous("lower_envelope", base.f0, base.theta0, Taxonomy::pure_bistable);
        SimState s = state_from(-m - M - o.pad, m + M + o.pad, o.dx, bump, zero, zero);
        const Trajectory tr = simulate(std::move(s), run_config(o.dx, 0.0, g.delta), f0);
        const Extremum e = min_on(tr.snapshots.back(), -m - M, m + M, true);
        cal.heat_mass = lower_report("heat_mass", e, g.a, g.delta);
        cal.heat_mass.values["a"] = g.a;
    }

    auto activation = [&](double K, int blocks) {
        const ReactionSpec f = make_spatial_counterexample(g, K);
        const double half = (blocks + 1) * M + m + o.pad;
        SimState s = state_from(-half, half, o.dx, bump, zero, zero);
        SimConfig c = run_config(o.dx, 0.0, 2.0 * blocks * g.delta);
        for (int j = 1; j <= blocks; ++j) c.snapshot_times.push_back(2.0 * j * g.delta);
        const Trajectory tr = simulate(std::move(s), c, f);
        std::vector<VerdictReport> parts;
        for (int j = 1; j <= blocks; ++j) {
            const Snapshot& sn = at_time(tr, 2.0 * j * g.delta);
            Extremum worst{kInf, 0.0};
            for (int k = -j; k <= j; ++k) {
                const Extremum e = min_on(sn, k * M - m, k * M + m, false);
                if (e.value < worst.value) worst = e;
            }
            parts.push_back(lower_report("blocks_" + std::to_string(j), worst, th0, sn.t));
        }
        return combine("activation", parts);
    };

    double K = std::max(1.0, K0);
    for (; K <= o.K_cap; K *= 2.0) {
        cal.activation = activation(K, 1);
        cal.K_trials.emplace_back(K, cal.activation.pass);
        if (cal.activation.pass) break;
    }
    cal.K = std::min(K, o.K_cap);
    cal.activation.values["K"] = cal.K;
    if (!cal.activation.pass) {
        cal.activation.detail = "K cap reached";
        cal.iterated = VerdictReport::make("iterated", false, -1.0, {{cal.K, 0.0, "K cap reached"}});
        return cal;
    }
    cal.iterated = activation(cal.K, o.iterate_blocks);
    return cal;
}

namespace {

double tail_offset(const SpatialGeometry& g) {
    return std::max(1.0 / g.kappa, 1.0 / std::sqrt(g.kappa)) * std::log(2.0 / (1.0 - g.p0));
}

SimState terrace_state(const SpatialGeometry& g, const TerraceOptions& o) {
    const double A = o.front_at, c = o.bump_index * g.period;
    const double th0 = g.theta0, m = g.m;
    auto u0 = [=](double x) {
        if (x <= A) return 1.0;
        return std::abs(x - c) < m ? th0 : 0.0;
    };
    return state_from(A - 40.0, c + m + 60.0, o.dx, u0, {BoundaryKind::dirichlet, 1.0},
                      {BoundaryKind::dirichlet, 0.0});
}

SimConfig terrace_config(const SpatialGeometry& g, const TerraceOptions& o) {
    SimConfig c = run_config(o.dx, 0.0, o.t_final, WindowPolicy::grow);
    c.snapshot_stride = o.snapshot_stride;
    c.max_width = 1e6;
    for (int j = 1; 2.0 * j * g.delta <= o.t_final + 1e-12; ++j) c.snapshot_times.push_back(2.0 * j * g.delta);
    return c;
}

TraceOptions terrace_trace_options(const SpatialGeometry& g, double eps0) {
    TraceOptions t;
    t.zeta = g.kappa;
    t.x_level = 0.5 * (g.theta0 + 1.0);
    t.eps_list = {0.1, 0.01, eps0};
    return t;
}

} // namespace

SpatialTerrace run_spatial_terrace(const SpatialCalibration& cal, const TerraceOptions& o) {
    const SpatialGeometry& g = cal.geo;
    const ReactionSpec f = make_spatial_counterexample(g, cal.K);
    SpatialTerrace out;
    out.epsilon0 = std::min(g.theta0, 0.5 * (1.0 - g.p0));
    const Trajectory tr = simulate(terrace_state(g, o), terrace_config(g, o), f);
    out.stats = tr.stats;

    // periodic snapshots feed the trace, checkpoints at 2 j delta feed the minorant
    std::vector<Snapshot> periodic;
    for (const auto& s : tr.snapshots) {
        const double k = s.t / o.snapshot_stride;
        if (std::abs(k - std::round(k)) <= 1e-9) periodic.push_back(s);
    }
    out.trace = trace_interfaces(periodic, terrace_trace_options(g, out.epsilon0));
    const std::size_t ei = out.trace.eps_index(out.epsilon0);
    out.fit = width_growth_fit(out.trace, ei);
    const double rk = std::sqrt(g.kappa);
    out.minorant_rate = (g.period - 4.0 * g.delta * rk) / (2.0 * g.delta);
    const double slope = out.fit.fit.slope;
    out.slope = VerdictReport::make("terrace_slope", slope >= 0.5 * out.minorant_rate, slope - 0.5 * out.minorant_rate,
                                    {{out.fit.t_to, slope, "fitted slope"}});
    out.slope.values["slope"] = slope;
    out.slope.values["minorant_rate"] = out.minorant_rate;

    const double A = o.front_at, offset = tail_offset(g);
    const double n_shift = o.bump_index * g.period;
    std::vector<VerdictReport> parts;
    double worst_margin = kInf;
    Witness worst{0.0, 0.0, ""};
    std::size_t checked = 0;
    for (int j = 1; 2.0 * j * g.delta <= o.t_final + 1e-12; ++j) {
        const Snapshot& s = at_time(tr, 2.0 * j * g.delta);
        const auto zp = last_at_or_above(s, out.epsilon0);
        const auto zm = first_at_or_below(s, 1.0 - out.epsilon0);
        const double width = (zp && zm) ? *zp - *zm : -kInf;
        const double bound = (g.period - 4.0 * g.delta * rk) * j + n_shift - A - offset;
        ++checked;
        if (width - bound < worst_margin) {
            worst_margin = width - bound;
            worst = {s.t, width, "width vs minorant " + std::to_string(bound)};
        }
    }
    out.minorant = VerdictReport::make("terrace_minorant", checked > 0 && worst_margin >= 0.0, worst_margin, {worst});
    out.minorant.values["checkpoints"] = static_cast<double>(checked);

    const double cap = 0.5 * (1.0 + g.p0);
    double tail_max = -kInf;
    Witness tail_w{0.0, 0.0, ""};
    for (const auto& s : tr.snapshots) {
        const double xs = 2.0 * rk * s.t + A + offset;
        const Extremum e = max_on(s, xs, kInf, false);
        if (e.value > tail_max) {
            tail_max = e.value;
            tail_w = {e.x, e.value, "t=" + std::to_string(s.t)};
        }
    }
    out.tail_bound = VerdictReport::make("tail_bound", tail_max <= cap, cap - tail_max, {tail_w});
    out.tail_bound.values["cap"] = cap;

    const PeriodicProfile& prof = g.profile;
    auto w = [&prof, rk, A](double t, double x) { return prof(x) + std::exp(-rk * (x - A - 2.0 * rk * t)); };
    std::vector<SamplePoint> pts;
    for (int k = 0; k <= 20; ++k) {
        const double t = o.t_final * k / 20.0;
        for (double x = A + 2.0 * rk * t - 20.0; x <= A + 2.0 * rk * t + 60.0; x += 0.37) pts.push_back({t, x});
    }
    ResidualOptions ro;
    ro.hx = 1e-2;
    ro.tol = 1e-5;
    out.supersolution = check_supersolution(w, f, pts, SolutionMode::super, ro);

    double env_gap = kInf;
    Witness env_w{0.0, 0.0, ""};
    for (const auto& s : periodic) {
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            const double x = s.x_at(i);
            const double wv = w(s.t, x);
            if (wv >= 1.0) continue;
            if (wv - s.u[i] < env_gap) {
                env_gap = wv - s.u[i];
                env_w = {x, s.u[i], "t=" + std::to_string(s.t)};
            }
        }
    }
    out.below_envelope = VerdictReport::make("below_supersolution", env_gap >= -1e-9, env_gap + 1e-9, {env_w});
    return out;
}

ControlRun run_terrace_control(const ReactionSpec& compliant, const SpatialGeometry& geo, double epsilon0,
                               const TerraceOptions& o) {
    ControlRun out;
    SimConfig c = run_config(o.dx, 0.0, o.t_final, WindowPolicy::grow);
    c.snapshot_stride = o.snapshot_stride;
    c.max_width = 1e6;
    const Trajectory tr = simulate(terrace_state(geo, o), c, compliant);
    out.stats = tr.stats;
    out.trace = trace_interfaces(tr.snapshots, terrace_trace_options(geo, epsilon0));
    out.fit = width_growth_fit(out.trace, out.trace.eps_index(epsilon0));
    return out;
}

// ------------------------------------------------------------ temporal

VerdictReport temporal_item_i(double M, double a, double dx, double pad) {
    const Boundary flux{BoundaryKind::zero_flux, 0.0};
    SimState s = state_from(-pad, M + pad, dx, [](double x) { return x <= 0.0 ? 1.0 : 0.625; }, flux, flux);
    const Trajectory tr = simulate(std::move(s), run_config(dx, 0.0, 1.0), make_g0());
    const Extremum e = max_on(tr.snapshots.back(), M, kInf, true);
    return upper_report("item_i", e, 0.625 - 2.0 * a, 1.0);
}

VerdictReport temporal_item_ii(double M, double a, double dx, double pad) {
    const Boundary flux{BoundaryKind::zero_flux, 0.0};
    const double rest = 0.625 - 2.0 * a;
    SimState s = state_from(-pad, 2.0 * M + pad, dx, [M, rest](double x) { return x <= M ? 1.0 : rest; }, flux, flux,
                            1.0);
    // the data never drops below 1/2, where the K-dependent part of g1 lives
    const Trajectory tr = simulate(std::move(s), run_config(dx, 1.0, 4.0), make_g1(0.0));
    const Extremum e = max_on(tr.snapshots.back(), 2.0 * M, kInf, true);
    return upper_report("item_ii", e, 0.625 - a, 4.0);
}

VerdictReport temporal_item_iii(double M, double dx, double pad) {
    const Boundary flux{BoundaryKind::zero_flux, 0.0};
    SimState s = state_from(-M - pad, M + pad, dx, [M](double x) { return std::abs(x) < M ? 4.0 / 11.0 : 0.0; },
                            flux, flux, -1.0);
    SimConfig c = run_config(dx, -1.0, 2.0);
    c.snapshot_times = {0.0, 2.0};
    const Trajectory tr = simulate(std::move(s), c, make_g0());
    const Extremum e0 = min_on(at_time(tr, 0.0), -1.0, 1.0, true);
    const Extremum e2 = min_on(at_time(tr, 2.0), -1.0, 1.0, true);
    return combine("item_iii", {lower_report("item_iii_t0", e0, 3.0 / 11.0, 0.0),
                                lower_report("item_iii_t2", e2, 3.0 / 11.0, 2.0)});
}

VerdictReport temporal_item_iv(double M, double K, double dx, double pad) {
    const Boundary flux{BoundaryKind::zero_flux, 0.0};
    SimState s = state_from(-4.0 * M - pad, 4.0 * M + pad, dx,
                            [](double x) { return std::abs(x) < 1.0 ? 2.0 / 11.0 : 0.0; }, flux, flux, 2.0);
    const Trajectory tr = simulate(std::move(s), run_config(dx, 2.0, 3.0), make_g1(K));
    const Extremum e = min_on(tr.snapshots.back(), -4.0 * M, 4.0 * M, true);
    auto rep = lower_report("item_iv", e, 5.0 / 11.0, 3.0);
    rep.values["K"] = K;
    return rep;
}

TemporalCalibration calibrate_temporal_counterexample(const TemporalCalibrationOptions& o) {
    TemporalCalibration cal;
    const Fn1 g0 = g0_profile();
    bool found = false;
    for (double a = o.a_start; a >= o.a_floor * (1.0 - 1e-12) && !found; a *= 0.5) {
        // far from the step, item (i) reduces to the ODE u' = g0(u) from 5/8
        Vec2 y{0.625, 0.0};
        const Rhs2 ode = [&g0](double, const Vec2& z) { return Vec2{g0(z[0]), 0.0}; };
        for (int k = 0; k < 1000; ++k) y = rk4_step(ode, 0.0, y, 1e-3);
        if (y[0] > 0.625 - 2.0 * a) continue;
        for (double M = 1.0; M <= o.M_cap && !found; M += 1.0) {
            ++cal.M_trials;
            cal.M = M;
            cal.a = a;
            cal.item_i = temporal_item_i(M, a, o.dx, o.pad);
            if (!cal.item_i.pass) continue;
            cal.item_ii = temporal_item_ii(M, a, o.dx, o.pad);
            if (!cal.item_ii.pass) continue;
            cal.item_iii = temporal_item_iii(M, o.dx, o.pad);
            found = cal.item_iii.pass;
        }
    }
    cal.delta = cal.a / 8.0;
    if (!found) {
        if (cal.item_ii.name.empty())
            cal.item_ii = VerdictReport::make("item_ii", false, -1.0, {{cal.M, 0.0, "search cap reached"}});
        if (cal.item_iii.name.empty())
            cal.item_iii = VerdictReport::make("item_iii", false, -1.0, {{cal.M, 0.0, "search cap reached"}});
        cal.item_iv = VerdictReport::make("item_iv", false, -1.0, {{cal.M, 0.0, "M/a search cap reached"}});
        return cal;
    }
    double K = std::max(1.0, o.K0);
    for (; K <= o.K_cap; K *= 2.0) {
        cal.item_iv = temporal_item_iv(cal.M, K, o.dx, o.pad);
        cal.K_trials.emplace_back(K, cal.item_iv.pass);
        if (cal.item_iv.pass) break;
    }
    cal.K = std::min(K, o.K_cap);
    return cal;
}

TemporalTerrace run_temporal_terrace(const TemporalCalibration& cal, const TemporalTerraceOptions& o) {
    TemporalTerrace out;
    const double M = cal.M;
    const ReactionSpec f = make_temporal_counterexample(cal.delta, cal.K);
    const double B = o.bump_centre > 0.0 ? o.bump_centre : 2.0 * M;
    out.B = B;
    auto u0 = [B, M](double x) {
        if (x <= 0.0) return 1.0;
        return std::abs(x - B) < M ? 4.0 / 11.0 : 0.0;
    };
    SimState s = state_from(-40.0, B + M + 60.0, o.dx, u0, {BoundaryKind::dirichlet, 1.0},
                            {BoundaryKind::dirichlet, 0.0}, 3.0);
    // the plateau behind the front is dropped once settled; the checks read 1 there
    SimConfig c = run_config(o.dx, 3.0, 4.0 * o.blocks, WindowPolicy::follow);
    c.dt = 0.5 * o.dx * o.dx;  // capped by 1/K(t) inside simulate
    c.max_width = 1e6;
    c.margin_nodes = 40;
    for (int j = 1; j <= o.blocks; ++j) c.snapshot_times.push_back(4.0 * j);
    const Trajectory tr = simulate(std::move(s), c, f);
    out.stats = tr.stats;

    const double eps0 = 2.0 / 11.0;
    const Snapshot& first = at_time(tr, 4.0);
    const auto a_pos = last_at_or_above(first, 0.625);
    out.A = a_pos ? *a_pos : first.x0;
    std::vector<VerdictReport> gains, minor, upper, lower;
    for (int j = 1; j <= o.blocks; ++j) {
        const Snapshot& sn = at_time(tr, 4.0 * j);
        const auto zp = last_at_or_above(sn, eps0);
        const auto zm = first_at_or_below(sn, 1.0 - eps0);
        const double width = (zp && zm) ? *zp - *zm : std::numeric_limits<double>::quiet_NaN();
        out.times.push_back(sn.t);
        out.width.push_back(width);
        if (j >= 2) {
            const double gain = width - out.width[out.width.size() - 2];
            out.gains.push_back(gain);
            gains.push_back(VerdictReport::make("gain", gain >= 0.5 * M, gain - 0.5 * M, {{sn.t, gain, "gain"}}));
        }
        const int i = j - 1;
        if (i >= 1) {
            const double bound = i * M + B - out.A;
            minor.push_back(VerdictReport::make("minorant", width >= bound, width - bound, {{sn.t, width, "width"}}));
            lower.push_back(lower_report("lower", min_on(sn, B - 3.0 * i * M, B + 3.0 * i * M, true), eps0, sn.t));
        }
        upper.push_back(upper_report("upper", max_on(sn, out.A + 2.0 * i * M, kInf, true), 0.625, sn.t));
    }
    out.per_block = combine("per_block_gain", gains);
    out.minorant = combine("terrace_minorant", minor);
    out.upper_bound = combine("upper_bound", upper);
    out.lower_bound = combine("lower_bound", lower);
    return out;
}

} // namespace frontlab
