#pragma once

#include "frontlab/counterexamples.hpp"
#include "frontlab/diagnostics.hpp"
#include "frontlab/pdesim.hpp"
#include "frontlab/verdict.hpp"

#include <vector>

namespace frontlab {

// ------------------------------------------------------------ spatial

struct SpatialCalibrationOptions {
    double dx = 0.05;
    double K_cap = 1048576.0;  // 2^20
    int iterate_blocks = 3;
    double pad = 40.0;
};

struct SpatialCalibration {
    SpatialGeometry geo;
    double K = 0.0;
    VerdictReport heat_mass;    // u(delta) >= a on (-m-M, m+M) from theta0 on (-m, m) under f0
    VerdictReport activation;   // bumps k = -1, 0, 1 reach theta0 by 2 delta
    VerdictReport iterated;     // bumps |k| <= j reach theta0 by 2 j delta
    std::vector<std::pair<double, bool>> K_trials;
    bool pass() const { return heat_mass.pass && activation.pass && iterated.pass; }
};

/// delta <= 0 selects period / (8 sqrt(kappa)).
SpatialCalibration calibrate_spatial_counterexample(const EnvelopePair& base, double delta = 0.0, double K0 = 1.0,
                                                    const SpatialCalibrationOptions& opts = {});

struct TerraceOptions {
    double dx = 0.05;
    double t_final = 100.0;
    double snapshot_stride = 1.0;
    double front_at = 0.0;   // A: data equal 1 on x <= A
    int bump_index = 1;      // n: theta0 on (nM - m, nM + m)
};

struct SpatialTerrace {
    InterfaceTrace trace;
    double epsilon0 = 0.0;
    WidthFit fit;
    double minorant_rate = 0.0;      // (M - 4 delta sqrt(kappa)) / (2 delta)
    VerdictReport slope;             // fitted slope >= minorant_rate / 2
    VerdictReport minorant;          // width at t = 2 j delta above the affine minorant
    VerdictReport tail_bound;        // u <= (1 + p0)/2 beyond 2 sqrt(kappa) t + A + offset
    VerdictReport supersolution;     // residual of p(x) + exp(-sqrt(kappa)(x - A - 2 sqrt(kappa) t))
    VerdictReport below_envelope;    // simulated u <= that supersolution
    SimStats stats;
};

SpatialTerrace run_spatial_terrace(const SpatialCalibration& cal, const TerraceOptions& opts = {});

/// Same data and pipeline under a compliant reaction; the width slope should vanish.
struct ControlRun {
    InterfaceTrace trace;
    WidthFit fit;
    SimStats stats;
};
ControlRun run_terrace_control(const ReactionSpec& compliant, const SpatialGeometry& geo, double epsilon0,
                               const TerraceOptions& opts = {});

// ------------------------------------------------------------ temporal

struct TemporalCalibrationOptions {
    double dx = 0.1;
    double M_cap = 200.0;
    double a_start = 1.0 / 32.0;
    double a_floor = 1.0 / 4096.0;  // 2^-12
    double K0 = 1.0;
    double K_cap = 1048576.0;
    double pad = 30.0;
};

struct TemporalCalibration {
    double M = 0.0, a = 0.0, K = 0.0, delta = 0.0;
    VerdictReport item_i, item_ii, item_iii, item_iv;
    int M_trials = 0;
    std::vector<std::pair<double, bool>> K_trials;
    bool pass() const { return item_i.pass && item_ii.pass && item_iii.pass && item_iv.pass; }
};

/// The four calibration items simulated at given constants (g0, g1 dynamics, zero-flux ends).
VerdictReport temporal_item_i(double M, double a, double dx, double pad = 30.0);
VerdictReport temporal_item_ii(double M, double a, double dx, double pad = 30.0);
VerdictReport temporal_item_iii(double M, double dx, double pad = 30.0);
VerdictReport temporal_item_iv(double M, double K, double dx, double pad = 30.0);

TemporalCalibration calibrate_temporal_counterexample(const TemporalCalibrationOptions& opts = {});

struct TemporalTerraceOptions {
    double dx = 0.1;
    int blocks = 50;
    double bump_centre = 0.0;  // B; <= 0 selects 2M
};

struct TemporalTerrace {
    std::vector<double> times;     // checkpoints 4j
    std::vector<double> width;     // width at level 2/11
    std::vector<double> gains;     // width(4j) - width(4j - 4)
    double A = 0.0, B = 0.0;
    VerdictReport per_block;       // every gain >= M/2
    VerdictReport minorant;        // width(4 + 4i) >= iM + B - A
    VerdictReport upper_bound;     // u(4 + 4i) <= 5/8 beyond A + 2iM
    VerdictReport lower_bound;     // u(4 + 4i) >= 2/11 on (B - 3iM, B + 3iM)
    SimStats stats;
};

TemporalTerrace run_temporal_terrace(const TemporalCalibration& cal, const TemporalTerraceOptions& opts = {});

} // namespace frontlab
