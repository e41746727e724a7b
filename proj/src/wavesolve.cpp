#include "frontlab/wavesolve.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace frontlab {

// -------------------------------------------------------------- profile

FrontProfile::FrontProfile(double speed, double s_first, double h, std::vector<double> W,
                           std::vector<double> dW, double left_rate, double right_rate)
    : speed_(speed), s0_(s_first), h_(h), W_(std::move(W)), dW_(std::move(dW)),
      left_rate_(left_rate), right_rate_(right_rate) {
    if (W_.size() < 3 || W_.size() != dW_.size())
        throw std::invalid_argument("FrontProfile: need at least three nodes");
}

double FrontProfile::operator()(double s) const {
    if (s <= s0_) return 1.0 - (1.0 - W_.front()) * std::exp(left_rate_ * (s - s0_));
    const double sl = s_last();
    if (s >= sl) return W_.back() * std::exp(-right_rate_ * (s - sl));
    const double pos = (s - s0_) / h_;
    const auto i = std::min(static_cast<std::size_t>(pos), W_.size() - 2);
    const Step2 st{s0_ + h_ * i, s0_ + h_ * (i + 1), {W_[i], dW_[i]}, {W_[i + 1], dW_[i + 1]},
                   {dW_[i], 0.0}, {dW_[i + 1], 0.0}};
    return st.at(s)[0];
}

double FrontProfile::derivative(double s) const {
    if (s <= s0_) return -(1.0 - W_.front()) * left_rate_ * std::exp(left_rate_ * (s - s0_));
    const double sl = s_last();
    if (s >= sl) return -right_rate_ * W_.back() * std::exp(-right_rate_ * (s - sl));
    const double pos = (s - s0_) / h_;
    const auto i = std::min(static_cast<std::size_t>(pos), W_.size() - 2);
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * dW_[i] + w * dW_[i + 1];
}

double FrontProfile::residual_max(const Fn1& f) const {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < W_.size(); ++i) {
        const double d2 = (W_[i + 1] - 2.0 * W_[i] + W_[i - 1]) / (h_ * h_);
        const double d1 = (W_[i + 1] - W_[i - 1]) / (2.0 * h_);
        worst = std::max(worst, std::abs(d2 + speed_ * d1 + f(W_[i])));
    }
    return worst;
}

// ---------------------------------------------------------------- speed

namespace {

enum class Shot { over, under, undecided };

double one_sided_derivative(const Fn1& f, double at, double dir) {
    const double h = 1e-6;
    return dir * (-3.0 * f(at) + 4.0 * f(at + dir * h) - f(at + 2.0 * dir * h)) / (2.0 * h);
}

double dead_zone(const Fn1& f) {
    const int n = 100000;
    double z = 0.0;
    for (int i = 1; i < n; ++i) {
        const double u = static_cast<double>(i) / n;
        if (f(u) != 0.0) break;
        z = u;
    }
    return z;
}

struct ShootSetup {
    const Fn1* f;
    double f1p;   // f'(1) < 0
    double zone;  // f == 0 on [0, zone]
    const SpeedOptions* opts;
};

Vec2 saddle_start(double c, double f1p, double eps) {
    const double mu = 0.5 * (-c + std::sqrt(c * c - 4.0 * f1p));
    return {1.0 - eps, -eps * mu};
}

Shot shoot(const ShootSetup& su, double c) {
    const Fn1& f = *su.f;
    Rhs2 rhs = [&f, c](double, const Vec2& y) { return Vec2{y[1], -c * y[1] - f(y[0])}; };
    Shot result = Shot::undecided;
    const double zone = su.zone;
    const auto end = integrate_dopri(rhs, 0.0, saddle_start(c, su.f1p, su.opts->offset), su.opts->s_max, su.opts->ode,
                    [&](const Step2& st) {
                        const double W = st.y1[0], P = st.y1[1];
                        if (W < -1e-10) { result = Shot::over; return false; }
                        if (P >= -1e-12 && W > 1e-6) { result = Shot::under; return false; }
                        if (zone > 0.0 && W <= zone) {
                            // linear dynamics: W tends to W + P / c
                            if (c <= 0.0) result = Shot::over;
                            else result = (W + P / c < 0.0) ? Shot::over : Shot::under;
                            return false;
                        }
                        return true;
                    });
    // degenerate ignition: too fast a trajectory creeps towards (zone, 0) and never arrives
    if (result == Shot::undecided && zone > 0.0 && end.second[0] > zone) result = Shot::under;
    return result;
}

FrontProfile build_profile(const Fn1& f, double c, double f1p, double zone, const SpeedOptions& opts) {
    Rhs2 rhs = [&f, c](double, const Vec2& y) { return Vec2{y[1], -c * y[1] - f(y[0])}; };
    const double h = opts.profile_step;
    std::vector<double> W, P;
    Vec2 y = saddle_start(c, f1p, opts.offset);
    W.push_back(y[0]);
    P.push_back(y[1]);
    const double cut = zone > 0.0 ? zone : 1e-6;
    const auto max_steps = static_cast<std::size_t>(opts.s_max / h);
    for (std::size_t k = 0; k < max_steps; ++k) {
        const Vec2 next = rk4_step(rhs, 0.0, y, h);
        if (!(next[0] > 0.0) || next[1] >= 0.0) break;
        W.push_back(next[0]);
        P.push_back(next[1]);
        y = next;
        if (next[0] <= cut) break;
    }
    if (W.size() < 3) throw FrontlabError(ErrorCode::stiff_failure, "front profile: too few nodes");
    // centre so that W(0) = 1/2
    double s_half = 0.0;
    for (std::size_t i = 0; i + 1 < W.size(); ++i) {
        if (W[i] >= 0.5 && W[i + 1] < 0.5) {
            s_half = h * (i + (W[i] - 0.5) / (W[i] - W[i + 1]));
            break;
        }
    }
    const double left_rate = 0.5 * (-c + std::sqrt(c * c - 4.0 * f1p));
    double right_rate;
    if (zone > 0.0) {
        right_rate = c;
    } else {
        const double f0p = one_sided_derivative(f, 0.0, 1.0);
        right_rate = 0.5 * (c + std::sqrt(std::max(0.0, c * c - 4.0 * f0p)));
    }
    return FrontProfile(c, -s_half, h, std::move(W), std::move(P), left_rate, right_rate);
}

} // namespace

std::vector<double> antiderivative_table(const Fn1& f, int intervals) {
    std::vector<double> F(intervals + 1, 0.0);
    const double h = 1.0 / intervals;
    for (int i = 0; i < intervals; ++i) {
        const double a = i * h, b = (i + 1) * h;
        F[i + 1] = F[i] + h / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    return F;
}

SpeedResult front_speed(const Fn1& f, const SpeedOptions& opts) {
    const double f1p = one_sided_derivative(f, 1.0, -1.0);
    if (!(f1p < 0.0))
        throw FrontlabError(ErrorCode::bad_parameter, "front_speed: f'(1) must be negative");
    const double zone = dead_zone(f);
    ShootSetup su{&f, f1p, zone, &opts};

    SpeedResult res;
    // c = 0 by the energy identity
    const int n_energy = 20000;
    const auto F = antiderivative_table(f, n_energy);
    const double F1 = F.back();
    const double Fmax = *std::max_element(F.begin(), F.end() - 1);
    const double energy_tol = 1e-12;
    if (F1 < Fmax - energy_tol)
        throw FrontlabError(ErrorCode::no_bracket, "front_speed: c = 0 already undershoots (no bracket)");
    if (std::abs(F1 - Fmax) <= energy_tol) {
        res.speed = 0.0;
        res.profile = build_profile(f, 0.0, f1p, zone, opts);
        res.residual_max = res.profile.residual_max(f);
        return res;
    }

    double xi = 0.0;
    for (int i = 1; i <= 4096; ++i) {
        const double u = i / 4096.0;
        xi = std::max(xi, f(u) / u);
    }
    double lo = 0.0, hi = 2.0 * std::sqrt(xi) + 1.0;
    int widen = 0;
    while (shoot(su, hi) != Shot::under) {
        if (++widen > 6) throw FrontlabError(ErrorCode::no_bracket, "front_speed: upper speed does not undershoot");
        lo = hi;
        hi *= 2.0;
    }
    int it = 0;
    while (hi - lo > opts.tol && it < 200) {
        const double mid = 0.5 * (lo + hi);
        const Shot s = shoot(su, mid);
        ++it;
        if (s == Shot::over) lo = mid;
        else if (s == Shot::under) hi = mid;
        else { lo = hi = mid; break; }
    }
    res.speed = 0.5 * (lo + hi);
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    res.iterations = it;
    res.profile = build_profile(f, res.speed, f1p, zone, opts);
    res.residual_max = res.profile.residual_max(f);
    return res;
}

SpeedResult front_speed(const ReactionSpec& spec, const SpeedOptions& opts) {
    if (spec.kind() != ReactionKind::homogeneous)
        throw std::invalid_argument("front_speed: reaction must be homogeneous");
    return front_speed(spec.slice(0.0), opts);
}

double theta_prime(const Fn1& f0, double theta0) {
    auto F0 = [&f0](double u) { return integrate(f0, 0.0, u); };
    return bisect_root(F0, theta0, 1.0, 1e-12);
}

// -------------------------------------------------------------- periodic

namespace {

/// Locate the first root of component k of the dense solution inside a step.
double root_in_step(const Step2& st, int k) {
    double a = st.s0, b = st.s1;
    double fa = st.y0[k];
    for (int i = 0; i < 100 && std::abs(b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++i) {
        const double m = 0.5 * (a + b);
        const double fm = st.at(m)[k];
        if ((fm >= 0.0) == (fa >= 0.0)) { a = m; fa = fm; }
        else b = m;
    }
    return 0.5 * (a + b);
}

std::pair<std::vector<double>, std::vector<double>> rk4_table(const Fn1& f0, Vec2 y, double length,
                                                              double step, double& h_out) {
    const auto n = static_cast<std::size_t>(std::max(2.0, std::ceil(length / step)));
    const double h = length / static_cast<double>(n);
    Rhs2 rhs = [&f0](double, const Vec2& z) { return Vec2{z[1], -f0(z[0])}; };
    std::vector<double> p{y[0]}, dp{y[1]};
    for (std::size_t i = 0; i < n; ++i) {
        y = rk4_step(rhs, 0.0, y, h);
        p.push_back(y[0]);
        dp.push_back(y[1]);
    }
    h_out = h;
    return {std::move(p), std::move(dp)};
}

std::pair<double, double> continue_from(const Fn1& f0, const std::vector<double>& p,
                                        const std::vector<double>& dp, double h, double y) {
    const auto n = p.size() - 1;
    auto k = static_cast<std::size_t>(std::max(0.0, std::floor(y / h)));
    if (k >= n) k = n - 1;
    const double d = y - h * static_cast<double>(k);
    if (d == 0.0) return {p[k], dp[k]};
    Rhs2 rhs = [&f0](double, const Vec2& z) { return Vec2{z[1], -f0(z[0])}; };
    const Vec2 out = rk4_step(rhs, 0.0, {p[k], dp[k]}, d);
    return {out[0], out[1]};
}

} // namespace

std::pair<double, double> PeriodicProfile::eval(double x) const {
    if (degenerate) return {p0, 0.0};
    double y = std::fmod(std::abs(x), period);
    double sign = x < 0.0 ? -1.0 : 1.0;
    if (y > 0.5 * period) { y = period - y; sign = -sign; }
    const auto [v, d] = continue_from(f0, p, dp, h, y);
    return {v, sign * d};
}

double PeriodicProfile::position_of(double level) const {
    if (degenerate) throw std::logic_error("PeriodicProfile::position_of: degenerate profile");
    if (level > p0 || level < minimum) throw std::invalid_argument("PeriodicProfile::position_of: level outside range");
    return bisect_root([this, level](double x) { return (*this)(x) - level; }, 0.0, 0.5 * period, 1e-13);
}

PeriodicProfile periodic_stationary(const Fn1& f0, double theta0, double p_at_0, const PeriodicOptions& opts) {
    const double th0p = theta_prime(f0, theta0);
    if (!(p_at_0 >= theta0 && p_at_0 < th0p)) {
        std::ostringstream os;
        os << "periodic_stationary: p(0) = " << p_at_0 << " outside [" << theta0 << ", " << th0p << ")";
        throw std::invalid_argument(os.str());
    }
    PeriodicProfile out;
    out.p0 = p_at_0;
    out.f0 = f0;
    if (f0(p_at_0) == 0.0 || p_at_0 == theta0) {
        out.degenerate = true;
        out.minimum = p_at_0;
        return out;
    }
    Rhs2 rhs = [&f0](double, const Vec2& y) { return Vec2{y[1], -f0(y[0])}; };
    double s_half = -1.0;
    integrate_dopri(rhs, 0.0, {p_at_0, 0.0}, 1e6, opts.ode, [&](const Step2& st) {
        if (st.y0[1] < 0.0 && st.y1[1] >= 0.0) {
            s_half = root_in_step(st, 1);
            return false;
        }
        return true;
    });
    if (s_half <= 0.0) throw FrontlabError(ErrorCode::stiff_failure, "periodic_stationary: no turning point");
    out.period = 2.0 * s_half;
    auto [p, dp] = rk4_table(f0, {p_at_0, 0.0}, s_half, opts.table_step, out.h);
    out.p = std::move(p);
    out.dp = std::move(dp);
    out.minimum = out.p.back();
    const double F_top = integrate(f0, 0.0, p_at_0);
    double drift = 0.0;
    for (std::size_t i = 0; i < out.p.size(); i += 1) {
        const double e = 0.5 * out.dp[i] * out.dp[i] + integrate(f0, 0.0, out.p[i]) - F_top;
        drift = std::max(drift, std::abs(e));
    }
    out.energy_drift = drift;
    return out;
}

// ------------------------------------------------------------------ hump

double HumpProfile::operator()(double x) const {
    if (x <= -r) return 1.0 - epsilon0;
    if (x >= 0.0) return 0.0;
    return std::max(0.0, continue_from(f0, v, dv, h, x + r).first);
}

double HumpProfile::derivative(double x) const {
    if (x <= -r || x >= 0.0) return 0.0;
    return continue_from(f0, v, dv, h, x + r).second;
}

HumpProfile build_hump_v(const Fn1& f0, double epsilon0, const PeriodicOptions& opts) {
    if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) throw std::invalid_argument("build_hump_v: epsilon0 must lie in (0,1)");
    const double top = 1.0 - epsilon0;
    const int n = 4096;
    const double F_top = integrate(f0, 0.0, top);
    double F_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) F_max = std::max(F_max, integrate(f0, 0.0, top * i / n));
    if (!(F_top > F_max))
        throw FrontlabError(ErrorCode::bad_parameter, "build_hump_v: F0(1-eps0) does not exceed max F0 below it");
    Rhs2 rhs = [&f0](double, const Vec2& y) { return Vec2{y[1], -f0(y[0])}; };
    double r = -1.0;
    integrate_dopri(rhs, 0.0, {top, 0.0}, 1e6, opts.ode, [&](const Step2& st) {
        if (st.y1[0] <= 0.0) {
            r = root_in_step(st, 0);
            return false;
        }
        if (st.y1[1] >= 0.0 && st.s1 > 0.0 && st.y1[1] > st.y0[1])
            throw FrontlabError(ErrorCode::bad_parameter, "build_hump_v: profile turned before reaching zero");
        return true;
    });
    if (r <= 0.0) throw FrontlabError(ErrorCode::stiff_failure, "build_hump_v: zero not reached");
    HumpProfile out;
    out.epsilon0 = epsilon0;
    out.r = r;
    out.f0 = f0;
    auto [v, dv] = rk4_table(f0, {top, 0.0}, r, opts.table_step, out.h);
    out.v = std::move(v);
    out.dv = std::move(dv);
    double err = 0.0;
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        const double val = std::max(0.0, out.v[i]);
        const double e = 0.5 * out.dv[i] * out.dv[i] - (F_top - integrate(f0, 0.0, val));
        err = std::max(err, std::abs(e));
    }
    out.first_integral_error = err;
    return out;
}

std::vector<double> discrete_hump(const Fn1& f0, double epsilon0, double dx) {
    const double top = 1.0 - epsilon0;
    std::vector<double> V{top};
    double prev = top, cur = top;
    const std::size_t cap = static_cast<std::size_t>(1e7);
    while (V.size() < cap) {
        const double next = 2.0 * cur - prev - dx * dx * f0(cur);
        if (next <= 0.0) {
            V.push_back(0.0);
            return V;
        }
        if (next >= cur && V.size() > 1)
            throw FrontlabError(ErrorCode::bad_parameter, "discrete_hump: recursion turned before reaching zero");
        V.push_back(next);
        prev = cur;
        cur = next;
    }
    throw FrontlabError(ErrorCode::search_cap, "discrete_hump: zero not reached");
}

// ------------------------------------------------------------- constants

namespace {

struct SupResult {
    double value;
    double where;
};

/// sup of g over (0, end] on a grid with golden-section refinement at the best cell.
SupResult sup_on(const Fn1& g, double end, int grid) {
    SupResult best{-std::numeric_limits<double>::infinity(), end};
    std::vector<double> pts;
    for (int i = 1; i <= grid; ++i) pts.push_back(end * i / grid);
    for (int k = 4; k <= 14; ++k) pts.push_back(end * std::pow(10.0, -k));
    std::sort(pts.begin(), pts.end());
    std::size_t bi = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double v = g(pts[i]);
        if (v > best.value) { best = {v, pts[i]}; bi = i; }
    }
    const double lo = bi > 0 ? pts[bi - 1] : 0.5 * pts[0];
    const double hi = bi + 1 < pts.size() ? pts[bi + 1] : end;
    const double x = golden_min([&g](double u) { return -g(u); }, lo, hi, 1e-12);
    const double v = g(x);
    if (v > best.value) best = {v, x};
    return best;
}

} // namespace

double select_epsilon0(const Fn1& f0, double theta0, int grid) {
    const double th0p = theta_prime(f0, theta0);
    double best = -std::numeric_limits<double>::infinity(), arg = 0.0;
    for (int i = 1; i <= grid; ++i) {
        const double u = static_cast<double>(i) / grid;
        const double v = f0(u) / u;
        if (v >= best) { best = v; arg = u; }
    }
    const double bound = std::min({theta0, 1.0 - th0p, 1.0 - arg});
    int k = static_cast<int>(std::ceil(bound * grid)) - 1;
    while (k > 0 && static_cast<double>(k) / grid >= bound) --k;
    if (k <= 0) throw FrontlabError(ErrorCode::bad_parameter, "select_epsilon0: no admissible grid value");
    return 0.5 * static_cast<double>(k) / grid;
}

DerivedConstants derive_constants(const EnvelopePair& env, double c0, HypothesisVariant variant, int grid) {
    if (!(c0 > 0.0)) throw std::invalid_argument("derive_constants: c0 must be positive");
    DerivedConstants dc;
    dc.c0 = c0;
    dc.epsilon0 = select_epsilon0(env.f0, env.theta0, grid);
    if (env.theta1 >= env.theta0) {
        dc.theta1_prime = env.theta0;
    } else {
        const double F1 = integrate(env.f0, 0.0, env.theta1);
        dc.theta1_prime = bisect_root([&](double u) { return integrate(env.f0, 0.0, u) - F1; },
                                      env.theta0, 1.0, 1e-12);
    }
    const double end = variant == HypothesisVariant::space ? dc.theta1_prime : env.theta0;
    const Fn1 ratio = [&env](double u) { return env.f1(u) / u; };
    const auto sup = sup_on(ratio, end, grid);
    dc.sup_ratio = sup.value;
    const double limit = 0.25 * c0 * c0;
    if (!(sup.value < limit)) {
        std::ostringstream os;
        os << "derive_constants: hypothesis fails at u* = " << sup.where << " (f1/u = " << sup.value
           << " >= c0^2/4 = " << limit << ")";
        throw FrontlabError(ErrorCode::hypothesis_fails, os.str());
    }
    dc.zeta = 0.5 * (std::max(0.0, sup.value) + limit);
    // largest grid value beyond `end` with f1 < zeta u up to it
    double dbl = 1.0;
    for (int i = 1; i <= grid; ++i) {
        const double u = static_cast<double>(i) / grid;
        if (!(env.f1(u) < dc.zeta * u)) {
            dbl = static_cast<double>(i - 1) / grid;
            if (dbl <= end) {
                const double cross = bisect_root([&](double x) { return env.f1(x) - dc.zeta * x; },
                                                 end, u, 1e-13);
                dbl = 0.5 * (end + cross);
            }
            break;
        }
    }
    dc.theta1_dblprime = dbl;
    dc.xi = sup_on(ratio, 1.0, grid).value;
    dc.c_zeta = 2.0 * std::sqrt(dc.zeta);
    dc.c_xi = (dc.xi + dc.zeta) / std::sqrt(dc.zeta);
    const int nt = 256;
    const auto F = antiderivative_table(env.f0, nt * 16);
    for (int i = 0; i <= nt; ++i) dc.F0_table.emplace_back(static_cast<double>(i) / nt, F[i * 16]);
    return dc;
}

VerdictReport check_front_hypothesis(const EnvelopePair& env, double c0, HypothesisVariant variant,
                                     const HypothesisOptions& opts) {
    double end = env.theta0;
    if (variant == HypothesisVariant::space && env.theta1 < env.theta0) {
        const double F1 = integrate(env.f0, 0.0, env.theta1);
        end = bisect_root([&](double u) { return integrate(env.f0, 0.0, u) - F1; }, env.theta0, 1.0, 1e-12);
    }
    const auto sup = sup_on([&env](double u) { return env.f1(u) / u; }, end, opts.grid);
    const double limit = 0.25 * c0 * c0;
    const double margin = limit - sup.value;
    const bool pass = margin > opts.strictness;
    std::vector<Witness> w;
    if (!pass) w.push_back({sup.where, sup.value, "f1(u)/u reaches c0^2/4 at u*"});
    else w.push_back({sup.where, sup.value, "maximiser of f1(u)/u"});
    auto r = VerdictReport::make(variant == HypothesisVariant::space ? "front hypothesis (space)"
                                                                     : "front hypothesis (time)",
                                 pass, margin, w);
    r.values["c0"] = c0;
    r.values["sup_ratio"] = sup.value;
    r.values["u_star"] = sup.where;
    r.values["threshold"] = limit;
    r.values["interval_end"] = end;
    return r;
}

VerdictReport check_front_hypothesis(const ReactionSpec& spec, HypothesisVariant variant,
                                     const HypothesisOptions& opts) {
    const double c0 = front_speed(spec.envelope().f0).speed;
    return check_front_hypothesis(spec.envelope(), c0, variant, opts);
}

// -------------------------------------------------------------- ignition

double alpha_f(const ReactionSpec& spec, double coord, double zeta, const std::vector<double>& u_grid) {
    double prev = 0.0;
    for (double u : u_grid) {
        if (u <= 0.0 || u >= 1.0) continue;
        if (spec(coord, u) >= zeta * u) {
            if (prev <= 0.0) return u;
            return bisect_root([&](double x) { return spec(coord, x) >= zeta * x ? 1.0 : -1.0; },
                               prev, u, 1e-12);
        }
        prev = u;
    }
    return 1.0;
}

VerdictReport check_ignition_hypothesis(const ReactionSpec& spec, double zeta, double eta,
                                        const IgnitionCheckOptions& opts) {
    const auto& env = spec.envelope();
    const double th0 = spec.theta0();
    for (int i = 1; i < opts.u_points; ++i) {
        const double u = th0 * i / opts.u_points;
        if (std::abs(env.f0(u)) > 1e-12)
            throw FrontlabError(ErrorCode::not_ignition, "check_ignition_hypothesis: f0 is not flat below theta0");
    }
    std::vector<double> ug;
    for (int i = 1; i <= opts.u_points; ++i) ug.push_back(static_cast<double>(i) / (opts.u_points + 1));

    const bool time_case = spec.kind() == ReactionKind::time_dependent;
    const bool homog = spec.kind() == ReactionKind::homogeneous;

    // coordinates: one period, a window, or a single point
    const bool periodic = spec.period().has_value();
    const bool local_sup = !(homog || time_case);
    const int nc = homog ? 1 : opts.coord_points;
    const double span = periodic ? *spec.period() : 2.0 * opts.coord_window;
    const double dc = homog ? 1.0 : span / nc;
    const double origin = periodic || homog ? 0.0 : -opts.coord_window;
    // non-periodic windows are padded so that sup windows of reach <= coord_window fit
    const int pad = (local_sup && !periodic) ? nc / 2 : 0;
    std::vector<double> coords;
    for (int j = 0; j < nc; ++j) coords.push_back(origin + dc * j);
    std::vector<double> alpha(coords.size());
    for (std::size_t j = 0; j < coords.size(); ++j) alpha[j] = alpha_f(spec, coords[j], zeta, ug);

    std::vector<double> rows = ug;
    rows.push_back(th0);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::remove_if(rows.begin(), rows.end(), [th0](double u) { return u > th0; }), rows.end());
    const int next = nc + 2 * pad;
    auto coord_at = [&](int q) { return origin + dc * (q - pad); };
    std::vector<std::vector<double>> table(rows.size(), std::vector<double>(next));
    for (std::size_t k = 0; k < rows.size(); ++k)
        for (int q = 0; q < next; ++q) table[k][q] = spec(coord_at(q), rows[k]);

    struct Worst {
        double value = std::numeric_limits<double>::infinity();
        double coord = 0.0, u = 0.0;
    };

    auto window_of = [&](double e) {
        if (!local_sup) return 0;
        return static_cast<int>(std::floor(1.0 / (e * dc) + 1e-12));
    };

    // sup over q in [j - m, j + m] (periodic wrap or padded window)
    auto sliding = [&](const std::vector<double>& row, int m) {
        std::vector<double> out(nc);
        if (periodic && 2 * m + 1 >= nc) {
            const double mx = *std::max_element(row.begin(), row.end());
            std::fill(out.begin(), out.end(), mx);
            return out;
        }
        const int n_ext = periodic ? nc + 2 * m : next;
        auto val = [&](int q) { return periodic ? row[((q - m) % nc + nc) % nc] : row[q]; };
        const int shift = periodic ? m : pad;
        std::deque<int> dq;
        int produced = 0;
        for (int q = 0; q < n_ext && produced < nc; ++q) {
            while (!dq.empty() && val(dq.back()) <= val(q)) dq.pop_back();
            dq.push_back(q);
            const int centre = q - m;
            if (centre - shift >= 0 && centre - shift < nc) {
                while (dq.front() < centre - m) dq.pop_front();
                out[centre - shift] = val(dq.front());
                ++produced;
            }
        }
        return out;
    };

    // Phi(eta): inf over admissible (c,u) of sup over |y - c| <= 1/eta of f(y,u)
    auto phi = [&](double e) {
        Worst w;
        const int m = std::min(window_of(e), local_sup && !periodic ? pad : nc);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const auto s = local_sup ? sliding(table[k], m) : std::vector<double>(table[k].begin() + pad, table[k].begin() + pad + nc);
            for (int j = 0; j < nc; ++j) {
                if (rows[k] < alpha[j]) continue;
                if (s[j] < w.value) w = {s[j], coords[j], rows[k]};
            }
        }
        // the lower end u = alpha itself
        for (int j = 0; j < nc; ++j) {
            if (alpha[j] > th0) continue;
            double best = -std::numeric_limits<double>::infinity();
            for (int q = -m; q <= m; ++q) best = std::max(best, spec(coords[j] + q * dc, alpha[j]));
            if (best < w.value) w = {best, coords[j], alpha[j]};
        }
        return w;
    };

    VerdictReport rep;
    double eta_star = 0.0;
    Worst at_star;
    const double eta_min = !local_sup ? 1.0 : (periodic ? 1.0 / span : 1.0 / opts.coord_window);
    const Worst wmin = phi(eta_min);
    if (wmin.value == std::numeric_limits<double>::infinity()) {
        eta_star = 1.0;  // no admissible (c, u): vacuous
    } else if (homog || time_case) {
        eta_star = std::min(1.0, wmin.value);
        at_star = wmin;
    } else if (wmin.value >= eta_min) {
        double lo = eta_min, hi = 1.0;
        if (phi(hi).value >= hi) lo = hi;
        for (int it = 0; it < 40 && hi - lo > 1e-6 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (phi(mid).value >= mid) lo = mid;
            else hi = mid;
        }
        eta_star = lo;
        at_star = phi(lo);
    } else {
        eta_star = 0.0;
        at_star = wmin;
    }

    const double e_use = eta > 0.0 ? eta : eta_star;
    const Worst w = e_use > 0.0 ? phi(e_use) : wmin;
    const bool pass = e_use > 0.0 && w.value >= e_use;
    std::vector<Witness> wit;
    if (w.value < std::numeric_limits<double>::infinity()) {
        std::ostringstream os;
        os << "inf-sup attained at coordinate with u = " << w.u;
        wit.push_back({w.coord, w.value, os.str()});
    }
    rep = VerdictReport::make("ignition non-vanishing", pass,
                              w.value == std::numeric_limits<double>::infinity() ? 1.0 : w.value - e_use, wit);
    double amin = 1.0, amax = 0.0;
    for (double a : alpha) { amin = std::min(amin, a); amax = std::max(amax, a); }
    rep.values["eta"] = e_use;
    rep.values["eta_star"] = eta_star;
    rep.values["zeta"] = zeta;
    rep.values["alpha_min"] = amin;
    rep.values["alpha_max"] = amax;
    if (w.value < std::numeric_limits<double>::infinity()) rep.values["witness_u"] = w.u;
    return rep;
}

} // namespace frontlab
