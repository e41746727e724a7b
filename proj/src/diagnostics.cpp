#include "frontlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace frontlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double value_or_nan(const std::optional<double>& v) { return v ? *v : kNaN; }

} // namespace

std::optional<double> last_at_or_above(const Snapshot& s, double level) {
    if (s.right_far >= level) return std::nullopt;
    const std::size_t n = s.u.size();
    for (std::size_t k = n; k-- > 0;) {
        if (s.u[k] >= level) {
            if (k + 1 == n) return s.x_at(k);
            return s.x_at(k) + s.dx * (s.u[k] - level) / (s.u[k] - s.u[k + 1]);
        }
    }
    if (s.left_far >= level) return s.x0;
    return std::nullopt;
}

std::optional<double> first_at_or_below(const Snapshot& s, double level) {
    if (s.left_far <= level) return std::nullopt;
    const std::size_t n = s.u.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (s.u[k] <= level) {
            if (k == 0) return s.x0;
            return s.x_at(k - 1) + s.dx * (s.u[k - 1] - level) / (s.u[k - 1] - s.u[k]);
        }
    }
    if (s.right_far <= level) return s.x_last();
    return std::nullopt;
}

TraceOptions trace_options(const DerivedConstants& dc, const EnvelopePair& env, bool hypothesis_holds) {
    TraceOptions o;
    o.zeta = dc.zeta;
    o.x_level = hypothesis_holds ? dc.theta1_dblprime : 0.5 * (env.theta0 + 1.0);
    o.eps_list = {0.1, 0.01, dc.epsilon0};
    return o;
}

std::size_t InterfaceTrace::eps_index(double e) const {
    for (std::size_t k = 0; k < eps.size(); ++k)
        if (std::abs(eps[k] - e) <= 1e-12 * std::max(1.0, e)) return k;
    throw std::invalid_argument("InterfaceTrace: eps not traced");
}

InterfaceTrace trace_interfaces(const std::vector<Snapshot>& snaps, const TraceOptions& opts) {
    InterfaceTrace tr;
    tr.eps = opts.eps_list;
    const std::size_t ne = tr.eps.size();
    tr.z_minus.assign(ne, {});
    tr.z_plus.assign(ne, {});
    tr.width.assign(ne, {});
    const double root_zeta = opts.zeta > 0.0 ? std::sqrt(opts.zeta) : 0.0;
    double run_x = -std::numeric_limits<double>::infinity(), run_y = run_x;
    for (const Snapshot& s : snaps) {
        tr.times.push_back(s.t);
        tr.x_half.push_back(value_or_nan(last_at_or_above(s, 0.5)));
        const double level = opts.level_at_time ? opts.level_at_time(s.t) : opts.x_level;
        double X = value_or_nan(last_at_or_above(s, level));
        double Y = kNaN;
        if (root_zeta > 0.0) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < s.u.size(); ++i)
                if (s.u[i] > 0.0) best = std::max(best, s.x_at(i) + std::log(s.u[i]) / root_zeta);
            if (std::isfinite(best)) Y = best;
        }
        if (opts.running_max) {
            if (!std::isnan(X)) run_x = std::max(run_x, X);
            if (!std::isnan(Y)) run_y = std::max(run_y, Y);
            X = std::isfinite(run_x) ? run_x : kNaN;
            Y = std::isfinite(run_y) ? run_y : kNaN;
        }
        tr.X.push_back(X);
        tr.Y.push_back(Y);
        for (std::size_t k = 0; k < ne; ++k) {
            const double e = tr.eps[k];
            const double zm = value_or_nan(first_at_or_below(s, 1.0 - e));
            const double zp = value_or_nan(last_at_or_above(s, e));
            tr.z_minus[k].push_back(zm);
            tr.z_plus[k].push_back(zp);
            tr.width[k].push_back(zp - zm);
        }
    }
    return tr;
}

WidthFit width_growth_fit(const std::vector<double>& times, const std::vector<double>& width,
                          double burn_in_fraction, std::size_t min_samples) {
    if (times.size() != width.size()) throw std::invalid_argument("width_growth_fit: length mismatch");
    if (times.empty()) throw FrontlabError(ErrorCode::insufficient_data, "width_growth_fit: empty series");
    const double t0 = times.front(), t1 = times.back();
    const double cut = t0 + burn_in_fraction * (t1 - t0);
    std::vector<double> t, w;
    for (std::size_t k = 0; k < times.size(); ++k)
        if (times[k] >= cut && std::isfinite(width[k])) {
            t.push_back(times[k]);
            w.push_back(width[k]);
        }
    if (t.size() < min_samples) {
        std::ostringstream os;
        os << "width_growth_fit: " << t.size() << " samples past burn-in, need " << min_samples;
        throw FrontlabError(ErrorCode::insufficient_data, os.str());
    }
    WidthFit out;
    out.fit = fit_line(t, w);
    out.samples = t.size();
    out.t_from = t.front();
    out.t_to = t.back();
    return out;
}

WidthFit width_growth_fit(const InterfaceTrace& trace, std::size_t eps_index, double burn_in_fraction,
                          std::size_t min_samples) {
    return width_growth_fit(trace.times, trace.width.at(eps_index), burn_in_fraction, min_samples);
}

LinearFit level_speed(const std::vector<double>& times, const std::vector<double>& pos, double t_from) {
    std::vector<double> t, x;
    for (std::size_t k = 0; k < times.size(); ++k)
        if (times[k] >= t_from && std::isfinite(pos[k])) {
            t.push_back(times[k]);
            x.push_back(pos[k]);
        }
    if (t.size() < 2) throw FrontlabError(ErrorCode::insufficient_data, "level_speed: fewer than two samples");
    return fit_line(t, x);
}

double shifted_distance(const Snapshot& a, const Snapshot& b, double s, const XRange& range) {
    double worst = 0.0;
    for (std::size_t j = 0; j < b.u.size(); ++j) {
        const double x = b.x_at(j);
        if (x < range.lo || x > range.hi) continue;
        worst = std::max(worst, std::abs(b.u[j] - a.value_at(x - s)));
    }
    for (std::size_t i = 0; i < a.u.size(); ++i) {
        const double x = a.x_at(i) + s;
        if (x < range.lo || x > range.hi) continue;
        worst = std::max(worst, std::abs(b.value_at(x) - a.u[i]));
    }
    return worst;
}

ShiftResult shift_distance(const Snapshot& a, const Snapshot& b, double lo, double hi, const XRange& range,
                           int scan_points) {
    if (!(hi >= lo) || scan_points < 2) throw std::invalid_argument("shift_distance: bad scan interval");
    auto g = [&](double s) { return shifted_distance(a, b, s, range); };
    const double step = (hi - lo) / (scan_points - 1);
    int best = 0;
    double best_v = std::numeric_limits<double>::infinity();
    for (int k = 0; k < scan_points; ++k) {
        const double v = g(lo + step * k);
        if (v < best_v) { best_v = v; best = k; }
    }
    if (step == 0.0) return {lo, best_v};
    const double a_lo = lo + step * std::max(0, best - 1);
    const double a_hi = lo + step * std::min(scan_points - 1, best + 1);
    const double s = golden_min(g, a_lo, a_hi, 1e-10);
    const double v = g(s);
    if (v <= best_v) return {s, v};
    return {lo + step * best, best_v};
}

namespace {

/// Index k and weight w with t between traj[k].t and traj[k+1].t.
std::pair<std::size_t, double> bracket_time(const std::vector<Snapshot>& traj, double t) {
    if (traj.empty()) throw std::invalid_argument("trajectory is empty");
    if (traj.size() == 1 || t <= traj.front().t) return {0, 0.0};
    if (t >= traj.back().t) return {traj.size() - 2, 1.0};
    auto it = std::upper_bound(traj.begin(), traj.end(), t, [](double v, const Snapshot& s) { return v < s.t; });
    const auto k = static_cast<std::size_t>(it - traj.begin()) - 1;
    const double w = (t - traj[k].t) / (traj[k + 1].t - traj[k].t);
    return {k, w};
}

double blend_value(const std::vector<Snapshot>& traj, std::size_t k, double w, double x) {
    if (traj.size() == 1) return traj[0].value_at(x);
    return (1.0 - w) * traj[k].value_at(x) + w * traj[k + 1].value_at(x);
}

} // namespace

double trajectory_value(const std::vector<Snapshot>& traj, double t, double x) {
    const auto [k, w] = bracket_time(traj, t);
    return blend_value(traj, k, w, x);
}

ShiftResult time_shift_distance(const Snapshot& target, const std::vector<Snapshot>& traj, const XRange& range,
                                int scan_points) {
    if (traj.size() < 2) throw FrontlabError(ErrorCode::insufficient_data, "time_shift_distance: need two snapshots");
    auto g = [&](double s) {
        const auto [k, w] = bracket_time(traj, s);
        double worst = 0.0;
        for (std::size_t j = 0; j < target.u.size(); ++j) {
            const double x = target.x_at(j);
            if (x < range.lo || x > range.hi) continue;
            worst = std::max(worst, std::abs(target.u[j] - blend_value(traj, k, w, x)));
        }
        return worst;
    };
    const double lo = traj.front().t, hi = traj.back().t;
    const double step = (hi - lo) / (scan_points - 1);
    int best = 0;
    double best_v = std::numeric_limits<double>::infinity();
    for (int k = 0; k < scan_points; ++k) {
        const double v = g(lo + step * k);
        if (v < best_v) { best_v = v; best = k; }
    }
    const double s = golden_min(g, lo + step * std::max(0, best - 1), lo + step * std::min(scan_points - 1, best + 1),
                                1e-9);
    double v = g(s), at = s;
    if (v > best_v) { v = best_v; at = lo + step * best; }
    return {at - target.t, v};
}

VerdictReport pulsating_check(const std::vector<Snapshot>& traj, double dt_shift, double dx_shift, double t_from,
                              double tol, const XRange& range) {
    if (traj.empty() || traj.back().t < t_from + dt_shift)
        throw FrontlabError(ErrorCode::insufficient_data, "pulsating_check: horizon shorter than one period");
    double worst = 0.0;
    Witness wit{0.0, 0.0, "no sample"};
    std::size_t used = 0;
    for (const Snapshot& s : traj) {
        if (s.t < t_from || s.t + dt_shift > traj.back().t + 1e-12) continue;
        ++used;
        const auto [k, w] = bracket_time(traj, s.t + dt_shift);
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            const double x = s.x_at(i) + dx_shift;
            if (x < range.lo || x > range.hi) continue;
            const double d = std::abs(blend_value(traj, k, w, x) - s.u[i]);
            if (d > worst) {
                worst = d;
                wit = {x, d, "t=" + std::to_string(s.t)};
            }
        }
    }
    if (used == 0) throw FrontlabError(ErrorCode::insufficient_data, "pulsating_check: no snapshot in range");
    auto rep = VerdictReport::make("pulsating_identity", worst < tol, tol - worst, {wit});
    rep.values["sup"] = worst;
    rep.values["dt_shift"] = dt_shift;
    rep.values["dx_shift"] = dx_shift;
    rep.values["snapshots"] = static_cast<double>(used);
    return rep;
}

VerdictReport pulsating_check_space(const std::vector<Snapshot>& traj, double period, double speed, double t_from,
                                    double tol, const XRange& range) {
    if (!(speed > 0.0)) throw std::invalid_argument("pulsating_check_space: speed must be positive");
    return pulsating_check(traj, period / speed, period, t_from, tol, range);
}

VerdictReport pulsating_check_time(const std::vector<Snapshot>& traj, double period, double speed, double t_from,
                                   double tol, const XRange& range) {
    return pulsating_check(traj, period, period * speed, t_from, tol, range);
}

double recorded_C(const InterfaceTrace& trace) {
    double c = 0.0;
    for (std::size_t k = 0; k < trace.size(); ++k)
        if (std::isfinite(trace.X[k]) && std::isfinite(trace.Y[k])) c = std::max(c, std::abs(trace.Y[k] - trace.X[k]));
    return c;
}

std::optional<double> empirical_T_eps(const InterfaceTrace& trace, std::size_t eps_index) {
    const auto& zm = trace.z_minus.at(eps_index);
    const std::size_t n = trace.size();
    for (std::size_t lag = 0; lag < n; ++lag) {
        bool ok = true, any = false;
        for (std::size_t k = 0; k + lag < n && ok; ++k) {
            if (!std::isfinite(trace.X[k])) continue;
            if (!std::isfinite(zm[k + lag])) { ok = false; break; }
            any = true;
            ok = zm[k + lag] >= trace.X[k];
        }
        if (ok && any) return trace.times[lag] - trace.times[0];
    }
    return std::nullopt;
}

VerdictReport check_width_bound(const InterfaceTrace& trace, const DerivedConstants& dc, std::size_t eps_index,
                                WidthBound* out) {
    const double eps = trace.eps.at(eps_index);
    const auto T = empirical_T_eps(trace, eps_index);
    if (!T) {
        auto rep = VerdictReport::make("width_bound", false, -1.0, {{eps, kNaN, "T_eps undefined"}});
        return rep;
    }
    WidthBound wb;
    wb.T_eps = *T;
    wb.C = recorded_C(trace);
    wb.bound = dc.c_xi * wb.T_eps + std::abs(std::log(eps)) / std::sqrt(dc.zeta) + wb.C;
    Witness wit{0.0, 0.0, "sup width"};
    const double t_start = trace.times.front() + wb.T_eps;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const double w = trace.width[eps_index][k];
        if (trace.times[k] < t_start || !std::isfinite(w)) continue;
        if (w > wb.sup_width) {
            wb.sup_width = w;
            wit = {trace.times[k], w, "sup width"};
        }
    }
    auto rep = VerdictReport::make("width_bound", wb.sup_width <= wb.bound, wb.bound - wb.sup_width, {wit});
    rep.values["bound"] = wb.bound;
    rep.values["T_eps"] = wb.T_eps;
    rep.values["C"] = wb.C;
    rep.values["sup_width"] = wb.sup_width;
    rep.values["eps"] = eps;
    if (out) *out = wb;
    return rep;
}

VerdictReport check_y_minus_x_bounded(const InterfaceTrace& trace, double tol) {
    if (trace.size() < 4) throw FrontlabError(ErrorCode::insufficient_data, "Y-X check: trace too short");
    const double mid = 0.5 * (trace.times.front() + trace.times.back());
    double early = 0.0, late = 0.0;
    Witness wit{0.0, 0.0, "late sup"};
    std::size_t used = 0;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        if (!std::isfinite(trace.X[k]) || !std::isfinite(trace.Y[k])) continue;
        ++used;
        const double d = std::abs(trace.Y[k] - trace.X[k]);
        if (trace.times[k] <= mid) early = std::max(early, d);
        else if (d > late) {
            late = d;
            wit = {trace.times[k], d, "late sup"};
        }
    }
    if (used < 4) throw FrontlabError(ErrorCode::insufficient_data, "Y-X check: too few defined entries");
    auto rep = VerdictReport::make("y_minus_x_bounded", late <= early + tol, early + tol - late, {wit});
    rep.values["early_sup"] = early;
    rep.values["late_sup"] = late;
    return rep;
}

// ------------------------------------------------------------ ergodic

namespace {

struct HumpSampler {
    HumpProfile hump;
    double top = 0.0;
    double v(double y) const { return hump(y); }
};

SimConfig ergodic_config(const ErgodicOptions& o, double x_min, double x_max, double t_start, double t_final) {
    SimConfig c;
    c.dx = o.dx;
    c.x_min = x_min;
    c.x_max = x_max;
    c.t_start = t_start;
    c.t_final = t_final;
    c.policy = WindowPolicy::grow;
    c.snapshot_stride = 0.0;
    c.margin_nodes = 20;
    return c;
}

SimState hump_state(const HumpSampler& hs, const SimConfig& c, double centre) {
    SimState s;
    s.x0 = c.x_min;
    s.dx = c.dx;
    s.t = c.t_start;
    const auto n = static_cast<std::size_t>(std::llround((c.x_max - c.x_min) / c.dx)) + 1;
    s.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.u[i] = hs.v(s.x_at(i) - centre);
    s.left = {BoundaryKind::zero_flux, 0.0};
    s.right = {BoundaryKind::dirichlet, 0.0};
    return s;
}

/// u >= v(. - target) at every node left of target.
bool dominates(const SimState& s, const HumpSampler& hs, double target) {
    if (s.u.empty()) return false;
    const double pos = (target - s.x0) / s.dx;
    if (pos < 0.0) return true;
    auto k = static_cast<long long>(std::min(pos, static_cast<double>(s.u.size() - 1)));
    for (; k >= 0; --k) {
        const auto i = static_cast<std::size_t>(k);
        if (s.u[i] < hs.v(s.x_at(i) - target)) return false;
    }
    return true;
}

/// sup{y : u >= v(x - y) for all x} by bisection.
double xi_of(const SimState& s, const HumpSampler& hs, double lo) {
    double hi = s.x_last();
    if (!dominates(s, hs, lo)) {
        double step = 1.0;
        while (!dominates(s, hs, lo) && lo > s.x0 - 1e6) { lo -= step; step *= 2.0; }
    }
    if (dominates(s, hs, hi)) return hi;
    for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (dominates(s, hs, mid)) lo = mid;
        else hi = mid;
    }
    return lo;
}

LinearFit tail_fit(const std::vector<double>& seq) {
    const int n_max = static_cast<int>(seq.size());
    std::vector<double> ns, vs;
    for (int n = std::max(1, n_max / 2); n <= n_max; ++n) {
        ns.push_back(n);
        vs.push_back(seq[static_cast<std::size_t>(n - 1)]);
    }
    return fit_line(ns, vs);
}

} // namespace

ErgodicResult ergodic_speed(const ReactionSpec& f, double p, const ErgodicOptions& o) {
    if (!(p > 0.0)) throw std::invalid_argument("ergodic_speed: cell period must be positive");
    if (o.n_max < 4) throw std::invalid_argument("ergodic_speed: n_max must be at least 4");
    const EnvelopePair& env = f.envelope();
    const double eps0 = o.epsilon0 > 0.0 ? o.epsilon0 : select_epsilon0(env.f0, env.theta0);
    HumpSampler hs{build_hump_v(env.f0, eps0), 1.0 - eps0};
    const double r = hs.hump.r;
    const int N = o.n_max;
    ErgodicResult res;
    const double dt = default_dt(o.dx, f.lipschitz_K());

    if (f.kind() != ReactionKind::time_dependent) {
        // first passage times tau_{m,n}
        auto passage = [&](int m, int n_stop, std::vector<double>* record) {
            const double x_min = m * p - r - o.margin_left;
            const double x_max = N * p + o.margin_right;
            SimConfig c = ergodic_config(o, x_min, x_max, 0.0, o.t_max);
            SimState s = hump_state(hs, c, m * p);
            int next = m + 1;
            double hit = kNaN;
            simulate(std::move(s), c, f, [&](const SimState& st) {
                while (next <= n_stop && dominates(st, hs, next * p)) {
                    if (record) record->push_back(st.t);
                    if (next == n_stop) hit = st.t;
                    ++next;
                }
                return next <= n_stop;
            });
            if (std::isnan(hit)) {
                std::ostringstream os;
                os << "ergodic_speed: no propagation to n = " << next << " by t = " << o.t_max;
                throw FrontlabError(ErrorCode::search_cap, os.str());
            }
            return hit;
        };
        passage(0, N, &res.tau);
        const LinearFit fit = tail_fit(res.tau);
        res.speed = p * N / res.tau.back();
        res.speed_increment = p / fit.slope;
        std::vector<VerdictReport> parts;
        const double tol = dt + o.sub_tol;
        for (int m : o.sub_m) {
            if (m <= 0 || m >= N) continue;
            const double t_mn = passage(m, N, nullptr);
            res.sub_tau.emplace_back(m, t_mn);
            const double slack = res.tau[static_cast<std::size_t>(m - 1)] + t_mn + tol - res.tau.back();
            parts.push_back(VerdictReport::make("tau_0n_le_tau_0m_plus_tau_mn", slack >= 0.0, slack,
                                                {{static_cast<double>(m), slack, "m"}}));
        }
        res.subadditivity = combine("subadditivity", parts);
        return res;
    }

    // time-dependent: xi_{m,n} read at t = n p
    auto displacement = [&](int m, std::vector<double>* record) {
        const double x_min = -r - o.margin_left;
        const double x_max = o.margin_right;
        SimConfig c = ergodic_config(o, x_min, x_max, m * p, N * p);
        for (int n = m + 1; n <= N; ++n) c.snapshot_times.push_back(n * p);
        SimState s = hump_state(hs, c, 0.0);
        double last = 0.0;
        double lo = -r;
        int n = m + 1;
        simulate(std::move(s), c, f, [&](const SimState& st) {
            if (n <= N && std::abs(st.t - n * p) <= 1e-9) {
                last = xi_of(st, hs, lo);
                lo = last - 1.0;
                if (record) record->push_back(last);
                ++n;
            }
            return true;
        });
        if (n <= N) throw FrontlabError(ErrorCode::search_cap, "ergodic_speed: horizon not reached");
        return last;
    };
    displacement(0, &res.tau);
    const LinearFit fit = tail_fit(res.tau);
    res.speed = res.tau.back() / (N * p);
    res.speed_increment = fit.slope / p;
    std::vector<VerdictReport> parts;
    const double tol = o.dx + o.sub_tol;
    for (int m : o.sub_m) {
        if (m <= 0 || m >= N) continue;
        const double x_mn = displacement(m, nullptr);
        res.sub_tau.emplace_back(m, x_mn);
        const double slack = res.tau.back() + tol - res.tau[static_cast<std::size_t>(m - 1)] - x_mn;
        parts.push_back(VerdictReport::make("xi_0n_ge_xi_0m_plus_xi_mn", slack >= 0.0, slack,
                                            {{static_cast<double>(m), slack, "m"}}));
    }
    res.subadditivity = combine("superadditivity", parts);
    return res;
}

SeedSpread seed_spread(const std::vector<double>& speeds) {
    if (speeds.empty()) throw FrontlabError(ErrorCode::insufficient_data, "seed_spread: no speeds");
    SeedSpread s;
    s.speeds = speeds;
    double sum = 0.0;
    for (double v : speeds) sum += v;
    s.mean = sum / static_cast<double>(speeds.size());
    const auto [mn, mx] = std::minmax_element(speeds.begin(), speeds.end());
    s.relative_spread = (*mx - *mn) / s.mean;
    return s;
}

} // namespace frontlab
