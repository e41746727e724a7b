#include "frontlab/counterexamples.hpp"

#include <algorithm>
#include <cmath>

namespace frontlab {

SpatialGeometry spatial_geometry(const Fn1& f0, double theta0, double delta, double kappa) {
    SpatialGeometry g;
    g.f0 = f0;
    g.theta0 = theta0;
    g.theta0_prime = theta_prime(f0, theta0);
    g.p0 = 0.25 * (theta0 + 3.0 * g.theta0_prime);
    g.profile = periodic_stationary(f0, theta0, g.p0);
    if (g.profile.degenerate)
        throw FrontlabError(ErrorCode::bad_parameter, "spatial_geometry: periodic profile is degenerate");
    g.period = g.profile.period;
    g.p_min = g.profile.minimum;
    g.m = g.profile.position_of(0.5 * (theta0 + g.theta0_prime));
    g.b = 0.25 * (3.0 * theta0 + g.theta0_prime);
    g.x_b = g.profile.position_of(g.b);
    g.kappa = kappa > 0.0 ? kappa : lipschitz_estimate(f0) * (1.0 + 1e-6);
    g.delta = delta > 0.0 ? delta : g.period / (8.0 * std::sqrt(g.kappa));
    if (!(4.0 * g.delta * std::sqrt(g.kappa) < g.period))
        throw std::invalid_argument("spatial_geometry: need 4 delta sqrt(kappa) < M");
    const double sd = 2.0 * std::sqrt(g.delta);
    const double heat = 0.5 * theta0 * (std::erf((2.0 * g.m + g.period) / sd) - std::erf(g.period / sd));
    g.a = std::exp(-g.kappa * g.delta) * heat;
    if (!(g.a > 0.0)) throw FrontlabError(ErrorCode::bad_parameter, "spatial_geometry: heat-kernel bound underflows");
    return g;
}

ReactionSpec make_spatial_counterexample(const SpatialGeometry& geo, double K) {
    if (!(K >= 1.0)) throw std::invalid_argument("make_spatial_counterexample: K must be >= 1");
    const double M = geo.period, m = geo.m, xb = geo.x_b, b = geo.b, lo = 0.5 * geo.a;
    const Fn1 f0 = geo.f0;
    auto lower_edge = [=](double x) {
        const double y = std::abs(x - M * std::round(x / M));
        if (y <= m) return lo;
        if (y >= xb) return b;
        return lo + (b - lo) * (y - m) / (xb - m);
    };
    ReactionSpec::Fields fl;
    fl.name = "spatial_counterexample";
    fl.kind = ReactionKind::space_dependent;
    fl.period = M;
    fl.evaluator = [=](double x, double u) {
        double v = f0(u);
        const double l = lower_edge(x);
        if (u > l && u < b) v += K * std::min(u - l, b - u);
        return v;
    };
    fl.lipschitz_K = std::max(1.0, K + geo.kappa);
    fl.envelope.f0 = f0;
    fl.envelope.f1 = [=](double u) {
        double v = f0(u);
        if (u > lo && u < b) v += K * std::min(u - lo, b - u);
        return v;
    };
    fl.envelope.theta0 = geo.theta0;
    fl.envelope.theta1 = bisect_root(fl.envelope.f1, lo, 0.5 * (lo + b), 1e-18);
    fl.theta0 = geo.theta0;
    fl.theta1 = fl.envelope.theta1;
    fl.theta = std::min(lo, monotone_theta(f0));
    fl.taxonomy = Taxonomy::pure_bistable;
    fl.params = {{"K", K}, {"M", M}, {"m", m}, {"a", geo.a}, {"delta", geo.delta}, {"kappa", geo.kappa},
                 {"x_b", xb}, {"b", b}, {"p0", geo.p0}, {"theta0", geo.theta0}, {"theta0_prime", geo.theta0_prime}};
    return ReactionSpec(std::move(fl));
}

ReactionSpec make_spatial_counterexample(const EnvelopePair& base, double delta, double K) {
    return make_spatial_counterexample(spatial_geometry(base.f0, base.theta0, delta), K);
}

Fn1 temporal_lower(double delta) {
    const Fn1 g0 = g0_profile();
    return [g0, delta](double u) {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        return g0(u) - 0.5 * delta * u * (1.0 - u);
    };
}

Fn1 temporal_upper(double delta, double K, const TemporalOptions& opts) {
    const Fn1 g1 = g1_profile(K);
    const double w = opts.w_blend;
    return [g1, delta, w](double u) {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        const double s = std::clamp(-1.0 + 2.0 * (u - 1.0 / 11.0) / w, -1.0, 1.0);
        return g1(u) + 0.5 * delta * u * (1.0 - u) * s;
    };
}

ReactionSpec make_temporal_counterexample(double delta, double K, const TemporalOptions& opts) {
    if (!(delta > 0.0 && delta < 1.0 / 64.0))
        throw std::invalid_argument("make_temporal_counterexample: delta must lie in (0, 1/64)");
    if (!(K >= 1.0)) throw std::invalid_argument("make_temporal_counterexample: K must be >= 1");
    if (!(opts.w_blend > 0.0 && opts.w_blend < 0.1))
        throw std::invalid_argument("make_temporal_counterexample: w_blend must lie in (0, 0.1)");
    const Fn1 f0 = temporal_lower(delta);
    const Fn1 f1 = temporal_upper(delta, K, opts);
    const double slope = K;
    auto blend = [=](double sigma, double u) { return std::min(f1(u), std::max(f0(u), slope * (u - sigma))); };
    ReactionSpec::Fields fl;
    fl.name = "temporal_counterexample";
    fl.kind = ReactionKind::time_dependent;
    fl.period = 4.0;
    fl.evaluator = [=](double t, double u) {
        const double tm = t - 4.0 * std::floor(t / 4.0);
        if (tm <= 1.0) return f0(u);
        if (tm < 2.0) return blend(2.0 - 3.0 * (tm - 1.0), u);
        if (tm <= 3.0) return f1(u);
        return blend(-1.0 + 3.0 * (tm - 3.0), u);
    };
    const double lip_f0 = lipschitz_estimate(f0) * (1.0 + 1e-6);
    const double lip = std::max({1.0, K, lipschitz_estimate(f1, 200001)}) * (1.0 + 1e-3);
    fl.lipschitz_K = lip;
    fl.local_lipschitz = [lip, lip_f0](double lo, double hi) {
        const double base = 4.0 * std::floor(lo / 4.0);
        if (lo >= base && hi <= base + 1.0) return std::max(1.0, lip_f0);
        return lip;
    };
    fl.envelope.f0 = f0;
    fl.envelope.f1 = f1;
    fl.envelope.theta0 = bisect_root(f0, 2.0 / 3.0, 0.99, 1e-15);
    fl.envelope.theta1 = bisect_root(f1, 1.0 / 11.0, 1.0 / 11.0 + opts.w_blend, 1e-15);
    fl.theta0 = fl.envelope.theta0;
    fl.theta1 = fl.envelope.theta1;
    fl.theta = 1.0 / 11.0;
    fl.taxonomy = Taxonomy::pure_bistable;
    fl.params = {{"delta", delta}, {"K", K}, {"w_blend", opts.w_blend}};
    return ReactionSpec(std::move(fl));
}

} // namespace frontlab
