#pragma once

#include "frontlab/numerics.hpp"
#include "frontlab/reaction.hpp"
#include "frontlab/verdict.hpp"

#include <limits>
#include <utility>
#include <vector>

namespace frontlab {

/// Traveling profile W(s), W(-inf) = 1, W(+inf) = 0, W(0) = 1/2.
class FrontProfile {
public:
    FrontProfile() = default;
    FrontProfile(double speed, double s_first, double h, std::vector<double> W, std::vector<double> dW,
                 double left_rate, double right_rate);

    double speed() const { return speed_; }
    double operator()(double s) const;
    double derivative(double s) const;
    /// Max of |W'' + cW' + f(W)| by central differences over the stored nodes.
    double residual_max(const Fn1& f) const;

    double s_first() const { return s0_; }
    double s_last() const { return s0_ + h_ * static_cast<double>(W_.size() - 1); }
    double step() const { return h_; }
    const std::vector<double>& values() const { return W_; }

private:
    double speed_ = 0.0, s0_ = 0.0, h_ = 0.0;
    std::vector<double> W_, dW_;
    double left_rate_ = 0.0;   // 1 - W ~ e^{left_rate (s - s0)}
    double right_rate_ = 0.0;  // W ~ e^{-right_rate (s - s_last)}
};

struct SpeedOptions {
    double tol = 1e-9;            // bisection width on c
    double offset = 1e-8;         // start at u = 1 - offset
    double profile_step = 0.01;   // fixed RK4 step for the stored profile
    OdeTolerance ode{1e-11, 1e-14, 1e-3, 1e-14, 0.25};
    double s_max = 4000.0;
};

struct SpeedResult {
    double speed = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    int iterations = 0;
    double residual_max = 0.0;
    FrontProfile profile;
};

/// Unique front speed of a homogeneous reaction by shooting from the saddle at u = 1.
SpeedResult front_speed(const Fn1& f, const SpeedOptions& opts = {});
SpeedResult front_speed(const ReactionSpec& spec, const SpeedOptions& opts = {});

/// Antiderivative table F(u) = int_0^u f on a uniform grid (cumulative Simpson).
std::vector<double> antiderivative_table(const Fn1& f, int intervals);

/// Root of int_0^u f0 = 0 above theta0.
double theta_prime(const Fn1& f0, double theta0);

/// Even periodic solution of p'' + f0(p) = 0 with p(0) = p0, p'(0) = 0.
class PeriodicProfile {
public:
    double p0 = 0.0;
    double period = std::numeric_limits<double>::infinity();
    double minimum = 0.0;       // P
    bool degenerate = false;
    double energy_drift = 0.0;  // max |p'^2/2 + F0(p) - F0(p0)| over the table

    double operator()(double x) const { return eval(x).first; }
    double derivative(double x) const { return eval(x).second; }
    std::pair<double, double> eval(double x) const;
    /// Smallest |x| in [0, period/2] where p(x) = level (p decreasing there).
    double position_of(double level) const;

    Fn1 f0;
    double h = 0.0;
    std::vector<double> p, dp;  // nodes on [0, period/2]
};

struct PeriodicOptions {
    double table_step = 0.005;
    OdeTolerance ode{1e-12, 1e-14, 1e-3, 1e-14, 0.05};
};

PeriodicProfile periodic_stationary(const Fn1& f0, double theta0, double p_at_0,
                                    const PeriodicOptions& opts = {});

/// Compactly supported subsolution: 1 - eps0 for x <= -r, v'' + f0(v) = 0 on (-r, 0), 0 for x >= 0.
class HumpProfile {
public:
    double epsilon0 = 0.0;
    double r = 0.0;
    double first_integral_error = 0.0;
    double operator()(double x) const;
    double derivative(double x) const;

    Fn1 f0;
    double h = 0.0;
    std::vector<double> v, dv;  // nodes on [-r, 0]
};

HumpProfile build_hump_v(const Fn1& f0, double epsilon0, const PeriodicOptions& opts = {});

/// Grid analogue of the hump: V[0] = 1 - eps0 is the last plateau node and
/// V[i+1] = 2V[i] - V[i-1] - dx^2 f0(V[i]) until the value drops below zero
/// (that node and all later ones are zero). Exact discrete subsolution.
std::vector<double> discrete_hump(const Fn1& f0, double epsilon0, double dx);

enum class HypothesisVariant { space, time };

struct DerivedConstants {
    double epsilon0 = 0.0;
    double theta1_prime = 0.0;
    double theta1_dblprime = 0.0;
    double zeta = 0.0;
    double xi = 0.0;
    double c0 = 0.0;
    double c_zeta = 0.0;
    double c_xi = 0.0;
    double sup_ratio = 0.0;  // sup f1(u)/u over the hypothesis interval
    std::vector<std::pair<double, double>> F0_table;
};

/// Largest grid value below theta0 meeting the hump constraints, halved.
double select_epsilon0(const Fn1& f0, double theta0, int grid = 2048);

/// Throws FrontlabError(hypothesis_fails) with the violating u when the
/// front hypothesis fails for this envelope.
DerivedConstants derive_constants(const EnvelopePair& env, double c0,
                                  HypothesisVariant variant = HypothesisVariant::space,
                                  int grid = 2048);

struct HypothesisOptions {
    double strictness = 1e-8;
    int grid = 4096;
};

/// f1(u) < c0^2 u / 4 on (0, theta1'] (space) or (0, theta0] (time).
VerdictReport check_front_hypothesis(const ReactionSpec& spec, HypothesisVariant variant,
                                     const HypothesisOptions& opts = {});
/// Same check from an envelope and a known c0.
VerdictReport check_front_hypothesis(const EnvelopePair& env, double c0, HypothesisVariant variant,
                                     const HypothesisOptions& opts = {});

struct IgnitionCheckOptions {
    int u_points = 1024;
    int coord_points = 512;
    double coord_window = 50.0;
};

/// alpha_f(c) = inf{u : f(c,u) >= zeta u}.
double alpha_f(const ReactionSpec& spec, double coord, double zeta, const std::vector<double>& u_grid);

/// Non-vanishing condition for ignition reactions above alpha_f. With eta <= 0
/// the largest admissible eta in (0, 1] is searched and reported.
VerdictReport check_ignition_hypothesis(const ReactionSpec& spec, double zeta, double eta,
                                        const IgnitionCheckOptions& opts = {});

} // namespace frontlab
