#pragma once

#include "frontlab/reaction.hpp"
#include "frontlab/wavesolve.hpp"

namespace frontlab {

/// Geometry of the spatially periodic non-existence construction built on a
/// homogeneous pure bistable base f0.
struct SpatialGeometry {
    double theta0 = 0.0;
    double theta0_prime = 0.0;
    double p0 = 0.0;         // p(0) = (theta0 + 3 theta0') / 4
    double period = 0.0;     // M
    double p_min = 0.0;      // P
    double m = 0.0;          // p >= (theta0 + theta0') / 2 on [-m, m]
    double x_b = 0.0;        // p(x_b) = b
    double b = 0.0;          // (3 theta0 + theta0') / 4
    double kappa = 0.0;      // Lipschitz constant of f0
    double delta = 0.0;
    double a = 0.0;          // heat-kernel mass bound after time delta
    Fn1 f0;
    PeriodicProfile profile;
};

/// delta <= 0 selects period / (8 sqrt(kappa)); kappa <= 0 estimates it from f0.
SpatialGeometry spatial_geometry(const Fn1& f0, double theta0, double delta = 0.0, double kappa = 0.0);

ReactionSpec make_spatial_counterexample(const SpatialGeometry& geo, double K);
ReactionSpec make_spatial_counterexample(const EnvelopePair& base, double delta, double K);

struct TemporalOptions {
    double w_blend = 1e-3;  // width of the sign ramp above 1/11 in f1
};

/// f0 = g0 - (delta/2) u(1-u);  f1 = g1 + (delta/2) u(1-u) s(u).
Fn1 temporal_lower(double delta);
Fn1 temporal_upper(double delta, double K, const TemporalOptions& opts = {});

/// Period-4 reaction: f0 on [0,1], f1 on [2,3], sign-preserving blends between.
ReactionSpec make_temporal_counterexample(double delta, double K, const TemporalOptions& opts = {});

} // namespace frontlab
