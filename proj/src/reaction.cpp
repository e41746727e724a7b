#include "frontlab/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace frontlab {

const char* to_string(ReactionKind kind) {
    switch (kind) {
    case ReactionKind::homogeneous: return "homogeneous";
    case ReactionKind::space_dependent: return "space-dependent";
    case ReactionKind::time_dependent: return "time-dependent";
    }
    return "unknown";
}

const char* to_string(Taxonomy tax) {
    switch (tax) {
    case Taxonomy::bi: return "BI";
    case Taxonomy::bistable: return "bistable";
    case Taxonomy::pure_bistable: return "pure_bistable";
    case Taxonomy::ignition: return "ignition";
    case Taxonomy::pure_ignition: return "pure_ignition";
    case Taxonomy::mixed_bim: return "mixed_BIM";
    }
    return "unknown";
}

ReactionSpec::ReactionSpec(Fields fields) {
    if (!fields.evaluator) throw std::invalid_argument("ReactionSpec: missing evaluator");
    if (!fields.envelope.f0 || !fields.envelope.f1)
        throw std::invalid_argument("ReactionSpec: missing envelope");
    if (!(fields.lipschitz_K >= 1.0))
        throw std::invalid_argument("ReactionSpec: Lipschitz constant must be >= 1");
    if (fields.period && !(*fields.period > 0.0))
        throw std::invalid_argument("ReactionSpec: period must be positive");
    f_ = std::make_shared<const Fields>(std::move(fields));
}

Fn1 ReactionSpec::slice(double coord) const {
    auto self = f_;
    return [self, coord](double u) {
        if (!(u > 0.0) || !(u < 1.0)) return 0.0;
        return self->evaluator(coord, u);
    };
}

std::optional<double> ReactionSpec::param(const std::string& key) const {
    for (const auto& [k, v] : f_->params)
        if (k == key) return v;
    return std::nullopt;
}

double ReactionSpec::lipschitz_on(double lo, double hi) const {
    if (f_->local_lipschitz) return f_->local_lipschitz(lo, hi);
    return f_->lipschitz_K;
}

// ------------------------------------------------------------- sampling

std::vector<double> sample_u_grid(const SamplingOptions& opts) {
    std::vector<double> u;
    const int n = std::max(opts.u_points, 8);
    u.reserve(n + 40);
    for (int i = 0; i <= n; ++i) u.push_back(static_cast<double>(i) / n);
    for (int k = 4; k <= 16; ++k) {
        const double e = std::pow(10.0, -k);
        u.push_back(e);
        u.push_back(1.0 - e);
    }
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

std::vector<double> sample_coords(const ReactionSpec& spec, const SamplingOptions& opts) {
    if (spec.kind() == ReactionKind::homogeneous) return {0.0};
    const int n = std::max(opts.coord_points, 1);
    std::vector<double> c(n);
    if (spec.period()) {
        for (int i = 0; i < n; ++i) c[i] = *spec.period() * i / n;
    } else {
        for (int i = 0; i < n; ++i)
            c[i] = -opts.coord_window + 2.0 * opts.coord_window * i / std::max(n - 1, 1);
    }
    return c;
}

namespace {

void push_witness(std::vector<Witness>& w, double coord, double value, const std::string& label) {
    if (w.size() < 8) w.push_back({coord, value, label});
}

} // namespace

VerdictReport validate_envelope(const EnvelopePair& env, const SamplingOptions& opts) {
    const auto u = sample_u_grid(opts);
    std::vector<Witness> w;
    double margin = std::numeric_limits<double>::infinity();
    for (double e : {env.f0(0.0), env.f0(1.0), env.f1(0.0), env.f1(1.0)}) {
        if (std::abs(e) > opts.tol_exact) push_witness(w, 0.0, e, "envelope root");
    }
    for (double x : u) {
        const double a = env.f0(x), b = env.f1(x);
        if (a > b + opts.tol_exact) push_witness(w, x, a - b, "f0 > f1");
        if (x <= 0.0 || x >= 1.0) continue;
        if (x < env.theta0 && a > opts.tol_exact) push_witness(w, x, a, "f0 > 0 below theta0");
        if (x > env.theta0 && !(a > 0.0)) push_witness(w, x, a, "f0 <= 0 above theta0");
        if (x < env.theta1 && b > opts.tol_exact) push_witness(w, x, b, "f1 > 0 below theta1");
        if (x > env.theta1 && !(b > 0.0)) push_witness(w, x, b, "f1 <= 0 above theta1");
    }
    const double mass = integrate(env.f0, 0.0, 1.0);
    margin = mass;
    if (!(mass > 0.0)) push_witness(w, 1.0, mass, "integral of f0 not positive");
    auto r = VerdictReport::make("envelope", w.empty(), w.empty() ? margin : -std::abs(w.front().value), w);
    r.values["integral_f0"] = mass;
    return r;
}

VerdictReport validate(const ReactionSpec& spec, const SamplingOptions& opts) {
    const auto u = sample_u_grid(opts);
    const auto coords = sample_coords(spec, opts);
    const auto& env = spec.envelope();
    std::vector<Witness> w;
    const double K = spec.lipschitz_K();
    const double th = spec.theta();
    double lip_seen = 0.0;
    for (double c : coords) {
        if (std::abs(spec.raw(c, 0.0)) > opts.tol_exact) push_witness(w, c, spec.raw(c, 0.0), "f(.,0) != 0");
        if (std::abs(spec.raw(c, 1.0)) > opts.tol_exact) push_witness(w, c, spec.raw(c, 1.0), "f(.,1) != 0");
        double prev = spec.raw(c, u[0]);
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double val = spec.raw(c, u[i]);
            if (val < env.f0(u[i]) - opts.tol_exact) push_witness(w, c, val - env.f0(u[i]), "f < f0 at u=" + std::to_string(u[i]));
            if (val > env.f1(u[i]) + opts.tol_exact) push_witness(w, c, val - env.f1(u[i]), "f > f1 at u=" + std::to_string(u[i]));
            if (i > 0) {
                const double du = u[i] - u[i - 1];
                const double q = std::abs(val - prev) / du;
                lip_seen = std::max(lip_seen, q);
                if (std::abs(val - prev) > K * du * (1.0 + 1e-9) + opts.tol_exact)
                    push_witness(w, c, q, "difference quotient exceeds K at u=" + std::to_string(u[i]));
                const bool left = u[i] <= th;
                const bool right = u[i - 1] >= 1.0 - th;
                if ((left || right) && val > prev + opts.tol_exact)
                    push_witness(w, c, val - prev, "not nonincreasing near a root at u=" + std::to_string(u[i]));
            }
            prev = val;
        }
    }
    auto env_report = validate_envelope(env, opts);
    if (!env_report.pass)
        for (auto& x : env_report.witnesses) push_witness(w, x.coordinate, x.value, x.label);
    auto r = VerdictReport::make("hypothesis H", w.empty(), w.empty() ? env_report.margin : -1.0, w);
    r.values["lipschitz_seen"] = lip_seen;
    r.values["integral_f0"] = env_report.values["integral_f0"];
    return r;
}

// -------------------------------------------------------------- classify

namespace {

struct SliceShape {
    bool bistable_pattern = false;
    bool ignition_pattern = false;
    double theta_tilde = 0.0;
};

SliceShape slice_shape(const ReactionSpec& spec, double c, const std::vector<double>& u,
                       double tol_exact) {
    SliceShape s;
    // interior indices only
    std::size_t i = 1;
    const std::size_t end = u.size() - 1;
    std::size_t last_neg = 0, first_pos = end;
    bool seen_pos = false, neg_after_pos = false, zero_after_pos = false;
    std::size_t zeros = 0, negs = 0;
    std::size_t last_zero = 0;
    for (; i < end; ++i) {
        const double v = spec.raw(c, u[i]);
        if (v > 0.0) {
            if (!seen_pos) first_pos = i;
            seen_pos = true;
        } else if (v < 0.0) {
            if (seen_pos) neg_after_pos = true;
            last_neg = i;
            ++negs;
        } else {
            if (seen_pos) zero_after_pos = true;
            ++zeros;
            last_zero = i;
        }
    }
    if (!seen_pos || neg_after_pos || zero_after_pos) return s;
    // bistable: negatives then (at most one zero) then positives
    if (zeros <= 1 && (negs == 0 || last_neg < first_pos)) {
        bool zeros_ok = zeros == 0 || (last_zero > last_neg && last_zero < first_pos);
        if (zeros_ok) {
            s.bistable_pattern = true;
            if (zeros == 1) s.theta_tilde = u[last_zero];
            else if (negs == 0) s.theta_tilde = 0.5 * u[first_pos];
            else s.theta_tilde = 0.5 * (u[last_neg] + u[first_pos]);
        }
    }
    // ignition: exact zeros then positives
    if (negs == 0 && zeros > 0) {
        bool flat = true;
        for (std::size_t k = 1; k < first_pos; ++k)
            if (std::abs(spec.raw(c, u[k])) > tol_exact) flat = false;
        if (flat) {
            s.ignition_pattern = true;
            s.theta_tilde = u[first_pos - 1];
        }
    }
    return s;
}

} // namespace

Classification classify(const ReactionSpec& spec, const SamplingOptions& opts) {
    Classification out;
    const auto u = sample_u_grid(opts);
    const auto coords = sample_coords(spec, opts);
    const auto& env = spec.envelope();
    const double h = 1.0 / std::max(opts.u_points, 8);

    if (spec.theta() <= 0.0 || spec.theta1() <= 0.0) {
        out.taxonomy = Taxonomy::mixed_bim;
        out.detail = "theta or theta1 vanishes";
        return out;
    }
    bool bistable = true, ignition = true;
    for (double x : u) {
        if (x <= 0.0 || x >= 1.0) continue;
        if (x < spec.theta1() && !(env.f1(x) < 0.0)) bistable = false;
        if (x < spec.theta0() && std::abs(env.f0(x)) > opts.tol_exact) ignition = false;
    }

    bool pure_b = bistable, pure_i = ignition;
    double tmin = 1.0, tmax = 0.0;
    std::vector<double> dists, vals;
    for (double c : coords) {
        if (!pure_b && !pure_i) break;
        const auto s = slice_shape(spec, c, u, opts.tol_exact);
        if (!s.bistable_pattern) pure_b = false;
        if (!s.ignition_pattern) pure_i = false;
        if (!s.bistable_pattern && !s.ignition_pattern) break;
        const double tt = s.theta_tilde;
        if (tt < spec.theta1() - 2 * h || tt > spec.theta0() + 2 * h) { pure_b = pure_i = false; break; }
        tmin = std::min(tmin, tt);
        tmax = std::max(tmax, tt);
        for (std::size_t k = 1; k + 1 < u.size(); ++k) {
            const double x = u[k];
            const double v = spec.raw(c, x);
            if (s.ignition_pattern && !s.bistable_pattern) {
                if (x <= tt) continue;
                dists.push_back(std::min(x - tt, 1.0 - x));
                vals.push_back(v);
            } else {
                dists.push_back(std::min({x, std::abs(x - tt), 1.0 - x}));
                vals.push_back(x < tt ? -v : v);
            }
        }
    }
    out.theta_tilde_min = tmin;
    out.theta_tilde_max = tmax;

    if (pure_b || pure_i) {
        // gamma(s) = min of signed values over samples at distance >= s
        std::vector<std::size_t> order(dists.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return dists[a] > dists[b]; });
        const double floor_s = 4.0 * h;
        std::vector<double> levels;
        for (int k = 0; k <= 24; ++k) levels.push_back(floor_s * std::pow(2.0, k / 4.0));
        std::sort(levels.rbegin(), levels.rend());
        double running = std::numeric_limits<double>::infinity();
        std::size_t idx = 0;
        std::vector<std::pair<double, double>> g;
        for (double s : levels) {
            if (s > 0.5) continue;
            while (idx < order.size() && dists[order[idx]] >= s) {
                running = std::min(running, vals[order[idx]]);
                ++idx;
            }
            g.emplace_back(s, running);
        }
        std::reverse(g.begin(), g.end());
        out.gamma = g;
        out.gamma_margin = g.empty() ? 0.0 : g.front().second;
        if (!(out.gamma_margin > 0.0)) {
            pure_b = pure_i = false;
        } else if (out.gamma_margin <= opts.tol_ineq) {
            out.inconclusive = true;
            out.detail = "fitted minorant margin below tolerance";
        }
    }

    if (pure_b) out.taxonomy = Taxonomy::pure_bistable;
    else if (pure_i) out.taxonomy = Taxonomy::pure_ignition;
    else if (bistable) out.taxonomy = Taxonomy::bistable;
    else if (ignition) out.taxonomy = Taxonomy::ignition;
    else out.taxonomy = Taxonomy::bi;
    return out;
}

// ------------------------------------------------------------ helpers

double lipschitz_estimate(const Fn1& f, int points) {
    double best = 0.0;
    double prev = f(0.0);
    for (int i = 1; i < points; ++i) {
        const double x = static_cast<double>(i) / (points - 1);
        const double v = f(x);
        best = std::max(best, std::abs(v - prev) * (points - 1));
        prev = v;
    }
    return best;
}

double monotone_theta(const Fn1& f, int points) {
    const double h = 1.0 / (points - 1);
    double left = 1.0, right = 1.0;
    for (int i = 0; i + 1 < points; ++i) {
        if (f((i + 1) * h) > f(i * h)) { left = i * h; break; }
    }
    for (int i = points - 1; i > 0; --i) {
        if (f((i - 1) * h) < f(i * h)) { right = 1.0 - i * h; break; }
    }
    return std::min(left, right);
}

namespace {

ReactionSpec homogeneous_spec(std::string name, Fn1 f, double K, double theta, EnvelopePair env,
                              Taxonomy tax, Params params) {
    ReactionSpec::Fields fl;
    fl.name = std::move(name);
    fl.kind = ReactionKind::homogeneous;
    fl.evaluator = [f](double, double u) { return f(u); };
    fl.lipschitz_K = std::max(1.0, K);
    fl.theta = theta;
    fl.theta1 = env.theta1;
    fl.theta0 = env.theta0;
    fl.envelope = std::move(env);
    fl.taxonomy = tax;
    fl.params = std::move(params);
    return ReactionSpec(std::move(fl));
}

double cubic_theta(double a) {
    const double disc = std::sqrt((1 + a) * (1 + a) - 3 * a);
    const double lo = ((1 + a) - disc) / 3.0, hi = ((1 + a) + disc) / 3.0;
    return std::min(lo, 1.0 - hi);
}

} // namespace

// -------------------------------------------------------------- families

ReactionSpec make_cubic_bistable(double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("make_cubic_bistable: a must lie in (0,1)");
    Fn1 f = [a](double u) { return u * (1.0 - u) * (u - a); };
    EnvelopePair env{f, f, a, a};
    // |f'| <= 1 on [0,1] for every a in (0,1)
    return homogeneous_spec("cubic", f, 1.0, cubic_theta(a), env,
                            a < 0.5 ? Taxonomy::pure_bistable : Taxonomy::bistable, {{"a", a}});
}

ReactionSpec make_homogeneous(const std::string& name, const Fn1& f, double theta0, Taxonomy taxonomy) {
    if (!(theta0 > 0.0 && theta0 < 1.0)) throw std::invalid_argument("make_homogeneous: theta0 outside (0,1)");
    EnvelopePair env{f, f, theta0, theta0};
    return homogeneous_spec(name, f, lipschitz_estimate(f) * (1.0 + 1e-6), monotone_theta(f), env, taxonomy, {});
}

Fn1 g0_profile() {
    return [](double u) {
        if (u <= 0.5 || u >= 1.0) return 0.0;
        return (u - 0.5) * (1.0 - u) * (u - 2.0 / 3.0);
    };
}

Fn1 g1_profile(double K) {
    return [K](double u) {
        if (u <= 1.0 / 11.0 || u >= 1.0) return 0.0;
        if (u < 0.5) return K * std::min(u - 1.0 / 11.0, 0.5 - u);
        if (u <= 2.0 / 3.0) return 0.0;
        return (u - 0.5) * (1.0 - u) * (u - 2.0 / 3.0);
    };
}

ReactionSpec make_g0() {
    auto g = g0_profile();
    EnvelopePair env{g, g, 2.0 / 3.0, 2.0 / 3.0};
    return homogeneous_spec("g0", g, 1.0, monotone_theta(g), env, Taxonomy::bi, {});
}

ReactionSpec make_g1(double K) {
    if (!(K >= 0.0)) throw std::invalid_argument("make_g1: K must be nonnegative");
    auto g = g1_profile(K);
    EnvelopePair env{g0_profile(), g, 2.0 / 3.0, K > 0.0 ? 1.0 / 11.0 : 2.0 / 3.0};
    return homogeneous_spec("g1", g, std::max(1.0, K), monotone_theta(g), env, Taxonomy::bi, {{"K", K}});
}

Fn1 ignition_profile(double theta_tilde, const IgnitionShape& shape) {
    const double q = shape.exponent, A = shape.amplitude;
    return [theta_tilde, q, A](double u) {
        if (u <= theta_tilde || u >= 1.0) return 0.0;
        return A * std::pow(u - theta_tilde, q) * (1.0 - u);
    };
}

ReactionSpec make_ignition(double theta_tilde, const IgnitionShape& shape) {
    if (!(theta_tilde > 0.0 && theta_tilde < 1.0))
        throw std::invalid_argument("make_ignition: theta must lie in (0,1)");
    if (!(shape.amplitude > 0.0)) throw std::invalid_argument("make_ignition: degenerate shape (amplitude <= 0)");
    if (!(shape.exponent >= 1.0)) throw std::invalid_argument("make_ignition: exponent must be >= 1 for Lipschitz continuity");
    auto g = ignition_profile(theta_tilde, shape);
    EnvelopePair env{g, g, theta_tilde, theta_tilde};
    return homogeneous_spec("ignition", g, lipschitz_estimate(g) * (1.0 + 1e-6), monotone_theta(g), env,
                            Taxonomy::pure_ignition,
                            {{"theta", theta_tilde}, {"exponent", shape.exponent}, {"amplitude", shape.amplitude}});
}

ReactionSpec make_two_threshold_bistable(double a_lo, double a_hi, double wavelength) {
    if (!(0.0 < a_lo && a_lo <= a_hi && a_hi < 0.5))
        throw std::invalid_argument("make_two_threshold_bistable: need 0 < a_lo <= a_hi < 1/2");
    if (!(wavelength > 0.0)) throw std::invalid_argument("make_two_threshold_bistable: wavelength must be positive");
    const double mid = 0.5 * (a_lo + a_hi), half = 0.5 * (a_hi - a_lo);
    const double k = 2.0 * std::numbers::pi / wavelength;
    ReactionSpec::Fields fl;
    fl.name = "two_threshold";
    fl.kind = ReactionKind::space_dependent;
    fl.period = wavelength;
    fl.evaluator = [=](double x, double u) {
        const double a = mid + half * std::cos(k * x);
        return u * (1.0 - u) * (u - a);
    };
    fl.lipschitz_K = 1.0;
    fl.theta = std::min(cubic_theta(a_lo), cubic_theta(a_hi));
    fl.envelope.f0 = [a_hi](double u) { return u * (1.0 - u) * (u - a_hi); };
    fl.envelope.f1 = [a_lo](double u) { return u * (1.0 - u) * (u - a_lo); };
    fl.envelope.theta0 = a_hi;
    fl.envelope.theta1 = a_lo;
    fl.theta0 = a_hi;
    fl.theta1 = a_lo;
    fl.taxonomy = Taxonomy::pure_bistable;
    fl.params = {{"a_lo", a_lo}, {"a_hi", a_hi}, {"wavelength", wavelength}};
    return ReactionSpec(std::move(fl));
}

ReactionSpec make_periodic_ignition(double theta_tilde, double period, double amp_lo, double amp_hi) {
    if (!(period > 0.0)) throw std::invalid_argument("make_periodic_ignition: period must be positive");
    if (!(amp_lo > 0.0 && amp_lo <= amp_hi))
        throw std::invalid_argument("make_periodic_ignition: need 0 < amp_lo <= amp_hi");
    auto g = ignition_profile(theta_tilde, {});
    const double mid = 0.5 * (amp_lo + amp_hi), half = 0.5 * (amp_hi - amp_lo);
    const double k = 2.0 * std::numbers::pi / period;
    ReactionSpec::Fields fl;
    fl.name = "periodic_ignition";
    fl.kind = ReactionKind::space_dependent;
    fl.period = period;
    fl.evaluator = [=](double x, double u) { return (mid + half * std::cos(k * x)) * g(u); };
    fl.lipschitz_K = std::max(1.0, amp_hi * lipschitz_estimate(g) * (1.0 + 1e-6));
    fl.theta = monotone_theta(g);
    fl.envelope.f0 = [g, amp_lo](double u) { return amp_lo * g(u); };
    fl.envelope.f1 = [g, amp_hi](double u) { return amp_hi * g(u); };
    fl.envelope.theta0 = fl.envelope.theta1 = theta_tilde;
    fl.theta0 = fl.theta1 = theta_tilde;
    fl.taxonomy = Taxonomy::pure_ignition;
    fl.params = {{"theta", theta_tilde}, {"period", period}, {"amp_lo", amp_lo}, {"amp_hi", amp_hi}};
    return ReactionSpec(std::move(fl));
}

double ergodic_cell_factor(unsigned long long seed, long long cell, const ErgodicLaw& law) {
    return law.factor_min + (law.factor_max - law.factor_min) * hash_uniform(seed, cell);
}

ReactionSpec make_random_ergodic(double cell_period, unsigned long long seed, const ErgodicLaw& law) {
    if (!(cell_period > 0.0)) throw std::invalid_argument("make_random_ergodic: cell period must be positive");
    if (!(law.factor_min > 0.0) || !(law.factor_max >= law.factor_min))
        throw std::invalid_argument("make_random_ergodic: factor law must satisfy 0 < min <= max");
    if (!(law.theta_tilde > 0.0 && law.theta_tilde < 1.0))
        throw std::invalid_argument("make_random_ergodic: theta must lie in (0,1)");
    auto g = ignition_profile(law.theta_tilde, {});
    const double p = cell_period;
    ReactionSpec::Fields fl;
    fl.name = "random_ergodic";
    fl.kind = law.axis == ErgodicAxis::space ? ReactionKind::space_dependent : ReactionKind::time_dependent;
    fl.evaluator = [=](double c, double u) {
        // linear interpolation between cell centres (k + 1/2) p
        const double s = c / p - 0.5;
        const double k = std::floor(s);
        const double w = s - k;
        const auto kk = static_cast<long long>(k);
        const double A = (1.0 - w) * ergodic_cell_factor(seed, kk, law) +
                         w * ergodic_cell_factor(seed, kk + 1, law);
        return A * g(u);
    };
    fl.lipschitz_K = std::max(1.0, law.factor_max * lipschitz_estimate(g) * (1.0 + 1e-6));
    fl.theta = monotone_theta(g);
    fl.envelope.f0 = [g, m = law.factor_min](double u) { return m * g(u); };
    fl.envelope.f1 = [g, m = law.factor_max](double u) { return m * g(u); };
    fl.envelope.theta0 = fl.envelope.theta1 = law.theta_tilde;
    fl.theta0 = fl.theta1 = law.theta_tilde;
    fl.taxonomy = Taxonomy::pure_ignition;
    fl.params = {{"cell_period", p}, {"seed", static_cast<double>(seed)},
                 {"factor_min", law.factor_min}, {"factor_max", law.factor_max},
                 {"theta", law.theta_tilde}, {"time_axis", law.axis == ErgodicAxis::time ? 1.0 : 0.0}};
    return ReactionSpec(std::move(fl));
}

ReactionSpec make_ignition_gap_violator(double theta0, double bump_slope) {
    if (!(theta0 > 0.2 && theta0 < 1.0)) throw std::invalid_argument("make_ignition_gap_violator: theta0 must lie in (0.2,1)");
    if (!(bump_slope > 0.0 && bump_slope <= 2.0))
        throw std::invalid_argument("make_ignition_gap_violator: bump slope must lie in (0,2]");
    auto base = ignition_profile(theta0, {});
    Fn1 f = [base, bump_slope](double u) {
        double v = base(u);
        if (u > 0.1 && u < 0.2) v += bump_slope * std::min(u - 0.1, 0.2 - u);
        return v;
    };
    EnvelopePair env;
    env.f0 = base;
    env.f1 = [](double u) { return u <= 0.1 || u >= 1.0 ? 0.0 : 2.0 * (u - 0.1) * (1.0 - u); };
    env.theta0 = theta0;
    env.theta1 = 0.1;
    const double K = std::max({lipschitz_estimate(f), lipschitz_estimate(env.f1)}) * (1.0 + 1e-6);
    return homogeneous_spec("ignition_gap_violator", f, K, monotone_theta(f), env, Taxonomy::ignition,
                            {{"theta0", theta0}, {"bump_slope", bump_slope}});
}

WaveBlockingCore make_wave_blocking_core() {
    const double pi = std::numbers::pi;
    Fn1 v = [pi](double x) { return 0.5 - std::atan(x) / pi; };
    Fn1 v2 = [pi](double x) { return 2.0 * x / (pi * (1.0 + x * x) * (1.0 + x * x)); };
    Fn1 g = [v2, pi](double u) {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        return -v2(std::tan(pi / 2.0 - pi * u));
    };
    EnvelopePair env{g, g, 0.5, 0.5};
    auto spec = homogeneous_spec("wave_blocking_core", g, lipschitz_estimate(g) * (1.0 + 1e-6),
                                 monotone_theta(g), env, Taxonomy::pure_bistable, {});
    return {v, v2, spec};
}

} // namespace frontlab
