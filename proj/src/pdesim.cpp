#include "frontlab/pdesim.hpp"
#include "frontlab/wavesolve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace frontlab {

namespace {

constexpr double kFlushBelow = 1e-250;

double far_value(const Boundary& b, double edge) {
    return b.kind == BoundaryKind::dirichlet ? b.value : edge;
}

double coordinate_for(ReactionKind kind, double x, double t) {
    switch (kind) {
    case ReactionKind::space_dependent: return x;
    case ReactionKind::time_dependent: return t;
    case ReactionKind::homogeneous: break;
    }
    return 0.0;
}

} // namespace

double SimState::value_at(double x) const {
    if (x < x0) return far_value(left, u.front());
    if (x > x_last()) return far_value(right, u.back());
    return interp_uniform(u, x0, dx, x);
}

double Snapshot::value_at(double x) const {
    if (x < x0) return left_far;
    if (x > x_last()) return right_far;
    return interp_uniform(u, x0, dx, x);
}

double default_dt(double dx, double lipschitz_K) {
    return std::min(0.5 * dx * dx, 0.5 / std::max(lipschitz_K, 1e-300));
}

Snapshot snapshot_of(const SimState& s) {
    Snapshot sn;
    sn.t = s.t;
    sn.x0 = s.x0;
    sn.dx = s.dx;
    sn.u = s.u;
    sn.left_far = far_value(s.left, s.u.front());
    sn.right_far = far_value(s.right, s.u.back());
    return sn;
}

SimState initial_state(const SimConfig& cfg) {
    if (!(cfg.dx > 0.0)) throw std::invalid_argument("SimConfig: dx must be positive");
    if (!(cfg.x_max > cfg.x_min)) throw std::invalid_argument("SimConfig: empty window");
    if (cfg.margin_nodes < 1) throw std::invalid_argument("SimConfig: margin_nodes must be positive");
    const auto n = static_cast<std::size_t>(std::llround((cfg.x_max - cfg.x_min) / cfg.dx)) + 1;
    if (n < static_cast<std::size_t>(2 * cfg.margin_nodes + 2))
        throw std::invalid_argument("SimConfig: window narrower than the margins");
    SimState s;
    s.x0 = cfg.x_min;
    s.dx = cfg.dx;
    s.t = cfg.t_start;
    s.u.assign(n, 0.0);
    const InitialCondition& ic = cfg.initial;
    using K = InitialCondition::Kind;
    switch (ic.kind) {
    case K::front_like:
        if (!(ic.mu > 0.0 && ic.beta > 0.0 && ic.beta <= 1.0))
            throw std::invalid_argument("front_like: need mu > 0 and beta in (0,1]");
        for (std::size_t i = 0; i < n; ++i)
            s.u[i] = ic.beta * std::min(1.0, std::exp(-ic.mu * (s.x_at(i) - ic.a - ic.Y)));
        s.left = {BoundaryKind::dirichlet, 1.0};
        s.right = {BoundaryKind::dirichlet, 0.0};
        break;
    case K::spark_like:
        if (!(ic.mu > 0.0 && ic.beta > 0.0 && ic.beta <= 1.0 && ic.L >= 0.0))
            throw std::invalid_argument("spark_like: need mu > 0, L >= 0 and beta in (0,1]");
        for (std::size_t i = 0; i < n; ++i)
            s.u[i] = ic.beta * std::min(1.0, std::exp(-ic.mu * (std::abs(s.x_at(i) - ic.a) - ic.L - ic.Y)));
        s.left = {BoundaryKind::dirichlet, 0.0};
        s.right = {BoundaryKind::dirichlet, 0.0};
        break;
    case K::hump_v: {
        if (!ic.hump_f0) throw std::invalid_argument("hump_v: lower envelope missing");
        if (!(ic.epsilon0 > 0.0 && ic.epsilon0 < 1.0)) throw std::invalid_argument("hump_v: epsilon0 outside (0,1)");
        const std::vector<double> V = discrete_hump(ic.hump_f0, ic.epsilon0, cfg.dx);
        const long long iz = std::llround((-ic.shift - cfg.x_min) / cfg.dx);
        const long long i_first = iz - static_cast<long long>(V.size()) + 1;
        for (std::size_t i = 0; i < n; ++i) {
            const long long k = static_cast<long long>(i) - i_first;
            if (k < 0) s.u[i] = V.front();
            else if (k < static_cast<long long>(V.size())) s.u[i] = V[static_cast<std::size_t>(k)];
            else s.u[i] = 0.0;
        }
        s.left = {BoundaryKind::zero_flux, 0.0};
        s.right = {BoundaryKind::dirichlet, 0.0};
        break;
    }
    case K::table:
        if (ic.xs.size() < 2 || ic.xs.size() != ic.us.size())
            throw std::invalid_argument("table: need matching xs/us with at least two points");
        for (std::size_t i = 0; i < n; ++i) {
            const double x = s.x_at(i);
            auto it = std::upper_bound(ic.xs.begin(), ic.xs.end(), x);
            if (it == ic.xs.begin()) s.u[i] = ic.us.front();
            else if (it == ic.xs.end()) s.u[i] = ic.us.back();
            else {
                const auto j = static_cast<std::size_t>(it - ic.xs.begin());
                const double w = (x - ic.xs[j - 1]) / (ic.xs[j] - ic.xs[j - 1]);
                s.u[i] = (1.0 - w) * ic.us[j - 1] + w * ic.us[j];
            }
        }
        s.left = {BoundaryKind::dirichlet, ic.us.front()};
        s.right = {BoundaryKind::dirichlet, ic.us.back()};
        break;
    }
    for (double v : s.u)
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("initial data outside [0,1]");
    if (cfg.left) s.left = *cfg.left;
    if (cfg.right) s.right = *cfg.right;
    return s;
}

void Stepper::advance(SimState& s, const ReactionSpec& f, double dt) {
    const std::size_t n = s.u.size();
    if (track) prev_ = s.u;
    double* u = s.u.data();
    bool finite = true;
    if (f.kind() == ReactionKind::space_dependent) {
        for (std::size_t i = 0; i < n; ++i) {
            const double v = u[i];
            if (!(v > 0.0 && v < 1.0)) continue;
            const double rate = f.raw(s.x_at(i), v);
            finite &= std::isfinite(rate);
            u[i] = std::clamp(v + dt * rate, 0.0, 1.0);
        }
    } else {
        const double c = f.kind() == ReactionKind::time_dependent ? s.t : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = u[i];
            if (!(v > 0.0 && v < 1.0)) continue;
            const double rate = f.raw(c, v);
            finite &= std::isfinite(rate);
            u[i] = std::clamp(v + dt * rate, 0.0, 1.0);
        }
    }
    if (!finite) {
        std::ostringstream os;
        os << "non-finite reaction value near t = " << s.t;
        throw FrontlabError(ErrorCode::numeric_blowup, os.str());
    }
    const double r = dt / (s.dx * s.dx);
    const bool fl = s.left.kind == BoundaryKind::zero_flux, fr = s.right.kind == BoundaryKind::zero_flux;
    if (!solver_ || solver_->size() != n || solver_->ratio() != r || solver_->flux_left() != fl ||
        solver_->flux_right() != fr)
        solver_.emplace(n, r, fl, fr);
    solver_->solve(s.u, s.left.value, s.right.value);
    bool nan = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = u[i];
        nan |= v != v;
        // flushing tiny values keeps subnormals out of the sweeps; the map stays monotone
        u[i] = v < kFlushBelow ? 0.0 : (v > 1.0 ? 1.0 : v);
    }
    if (nan) throw FrontlabError(ErrorCode::numeric_blowup, "NaN after diffusion substep");
    if (track) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) m = std::min(m, (u[i] - prev_[i]) / dt);
        last_min_rate_ = m;
    }
    s.t += dt;
    s.dt = dt;
}

SimState step(const SimState& state, const ReactionSpec& f) {
    if (!(state.dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    if (state.dt * f.lipschitz_K() > 1.0) throw std::invalid_argument("step: dt * K exceeds 1");
    SimState out = state;
    Stepper st;
    st.advance(out, f, state.dt);
    return out;
}

namespace {

bool settled_right(const SimState& s, int margin, double tol) {
    if (s.right.kind != BoundaryKind::dirichlet) return true;
    const std::size_t n = s.u.size();
    for (std::size_t i = n - static_cast<std::size_t>(margin); i < n; ++i)
        if (std::abs(s.u[i] - s.right.value) > tol) return false;
    return true;
}

bool settled_left(const SimState& s, std::size_t count, double tol) {
    if (s.left.kind != BoundaryKind::dirichlet) return true;
    count = std::min(count, s.u.size());
    for (std::size_t i = 0; i < count; ++i)
        if (std::abs(s.u[i] - s.left.value) > tol) return false;
    return true;
}

void check_cap(const SimState& s, const SimConfig& cfg) {
    if (s.dx * static_cast<double>(s.u.size() - 1) > cfg.max_width) {
        std::ostringstream os;
        os << "window growth exceeded cap " << cfg.max_width << " at t = " << s.t;
        throw FrontlabError(ErrorCode::window_cap, os.str());
    }
}

void adjust_window(SimState& s, const SimConfig& cfg, SimStats& stats) {
    const auto margin = static_cast<std::size_t>(cfg.margin_nodes);
    const bool right_ok = settled_right(s, cfg.margin_nodes, cfg.settle_tol);
    const bool left_ok = settled_left(s, margin, cfg.settle_tol);
    if (right_ok && left_ok) return;
    if (cfg.policy == WindowPolicy::fixed) {
        ++stats.breaches;
        if (cfg.abort_on_breach) {
            std::ostringstream os;
            os << "fixed window breached at t = " << s.t;
            throw FrontlabError(ErrorCode::window_cap, os.str());
        }
        return;
    }
    const auto chunk = static_cast<std::size_t>(std::max(1.0, std::round(cfg.chunk / s.dx)));
    if (!right_ok) {
        const bool can_translate = cfg.policy == WindowPolicy::follow && s.left.kind == BoundaryKind::dirichlet &&
                                   s.u.size() > chunk + 2 * margin && settled_left(s, chunk + margin, cfg.settle_tol);
        if (can_translate) {
            s.u.erase(s.u.begin(), s.u.begin() + static_cast<std::ptrdiff_t>(chunk));
            s.u.insert(s.u.end(), chunk, s.right.value);
            s.x0 += s.dx * static_cast<double>(chunk);
            ++stats.translations;
        } else {
            s.u.insert(s.u.end(), chunk, s.right.value);
            ++stats.growths;
        }
    }
    if (!left_ok) {
        s.u.insert(s.u.begin(), chunk, s.left.value);
        s.x0 -= s.dx * static_cast<double>(chunk);
        ++stats.growths;
    }
    check_cap(s, cfg);
}

std::vector<double> snapshot_schedule(const SimConfig& cfg, double t0) {
    std::vector<double> times = cfg.snapshot_times;
    if (cfg.snapshot_stride > 0.0) {
        const double first = std::max(cfg.snapshot_from, t0);
        auto k = static_cast<long long>(std::ceil((first - cfg.snapshot_from) / cfg.snapshot_stride - 1e-9));
        for (;; ++k) {
            const double t = cfg.snapshot_from + cfg.snapshot_stride * static_cast<double>(k);
            if (t > cfg.t_final + 1e-12) break;
            times.push_back(t);
        }
    }
    times.push_back(cfg.t_final);
    std::sort(times.begin(), times.end());
    std::vector<double> out;
    for (double t : times) {
        if (t < t0 - 1e-12 || t > cfg.t_final + 1e-12) continue;
        if (out.empty() || t - out.back() > 1e-9) out.push_back(t);
    }
    return out;
}

} // namespace

Trajectory simulate(const SimConfig& cfg, const ReactionSpec& f, const StepObserver& observer) {
    return simulate(initial_state(cfg), cfg, f, observer);
}

Trajectory simulate(SimState s, const SimConfig& cfg, const ReactionSpec& f, const StepObserver& observer) {
    const auto wall0 = std::chrono::steady_clock::now();
    if (!(cfg.t_final >= s.t)) throw std::invalid_argument("simulate: t_final before the start time");
    if (cfg.dt && !(*cfg.dt > 0.0)) throw std::invalid_argument("simulate: dt must be positive");
    const double dt_cap = cfg.dt ? *cfg.dt : 0.5 * s.dx * s.dx;
    const double k_frac = cfg.dt ? 1.0 : 0.5;  // dt * K stays below this
    const bool local = f.kind() == ReactionKind::time_dependent;
    const double dt_global = std::min(dt_cap, k_frac / f.lipschitz_K());

    Trajectory traj;
    SimStats& st = traj.stats;
    st.min_dut = std::numeric_limits<double>::infinity();
    st.dt_min = std::numeric_limits<double>::infinity();
    Stepper stepper;
    stepper.track = cfg.track_monotonicity;

    const std::vector<double> schedule = snapshot_schedule(cfg, s.t);
    std::size_t next = 0;
    if (next < schedule.size() && std::abs(schedule[next] - s.t) <= 1e-9) {
        traj.snapshots.push_back(snapshot_of(s));
        ++next;
    }
    bool stopped = false;
    while (next < schedule.size() && !stopped) {
        const double target = schedule[next];
        while (s.t < target - 1e-12) {
            double dt = dt_global;
            if (local) dt = std::min(dt_cap, k_frac / f.lipschitz_on(s.t, s.t + dt_cap));
            bool land = false;
            if (s.t + dt * (1.0 + 1e-6) >= target) {
                dt = target - s.t;
                land = true;
            }
            stepper.advance(s, f, dt);
            if (land) s.t = target;
            ++st.steps;
            st.dt_min = std::min(st.dt_min, dt);
            st.dt_max = std::max(st.dt_max, dt);
            if (cfg.track_monotonicity) st.min_dut = std::min(st.min_dut, stepper.last_min_rate());
            adjust_window(s, cfg, st);
            if (observer && !observer(s)) { stopped = true; break; }
        }
        if (!stopped || std::abs(s.t - target) <= 1e-12) {
            if (std::abs(s.t - target) <= 1e-9) traj.snapshots.push_back(snapshot_of(s));
            ++next;
        }
    }
    if (stopped && (traj.snapshots.empty() || traj.snapshots.back().t != s.t)) traj.snapshots.push_back(snapshot_of(s));
    for (const auto& sn : traj.snapshots)
        for (double v : sn.u) {
            st.min_u = std::min(st.min_u, v);
            st.max_u = std::max(st.max_u, v);
        }
    if (!cfg.track_monotonicity) st.min_dut = 0.0;
    if (st.steps == 0) st.dt_min = 0.0;
    traj.final_state = std::move(s);
    st.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    return traj;
}

VerdictReport check_supersolution(const std::function<double(double, double)>& w, const ReactionSpec& f,
                                  const std::vector<SamplePoint>& samples, SolutionMode mode,
                                  const ResidualOptions& opts) {
    double worst = mode == SolutionMode::super ? std::numeric_limits<double>::infinity()
                                               : -std::numeric_limits<double>::infinity();
    SamplePoint at{0.0, 0.0};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& p : samples) {
        const double c = w(p.t, p.x);
        const double wt = (w(p.t + opts.ht, p.x) - w(p.t - opts.ht, p.x)) / (2.0 * opts.ht);
        const double wxx = (w(p.t, p.x + opts.hx) - 2.0 * c + w(p.t, p.x - opts.hx)) / (opts.hx * opts.hx);
        const double res = wt - wxx - f(coordinate_for(f.kind(), p.x, p.t), c);
        lo = std::min(lo, res);
        hi = std::max(hi, res);
        const bool worse = mode == SolutionMode::super ? res < worst : res > worst;
        if (worse) {
            worst = res;
            at = p;
        }
    }
    const double margin = mode == SolutionMode::super ? worst + opts.tol : opts.tol - worst;
    const bool pass = !samples.empty() && margin >= 0.0;
    std::vector<Witness> wit{{at.x, worst, "t=" + std::to_string(at.t)}};
    auto rep = VerdictReport::make(mode == SolutionMode::super ? "supersolution" : "subsolution", pass, margin, wit);
    rep.values["min_residual"] = lo;
    rep.values["max_residual"] = hi;
    rep.values["samples"] = static_cast<double>(samples.size());
    return rep;
}

} // namespace frontlab
