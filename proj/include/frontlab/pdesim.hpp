#pragma once

#include "frontlab/numerics.hpp"
#include "frontlab/reaction.hpp"
#include "frontlab/verdict.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace frontlab {

enum class BoundaryKind { dirichlet, zero_flux };

struct Boundary {
    BoundaryKind kind = BoundaryKind::dirichlet;
    double value = 0.0;  // far-field value for Dirichlet ends
};

struct SimState {
    double x0 = 0.0;  // position of node 0 (window offset)
    double dx = 0.05;
    double t = 0.0;
    double dt = 0.0;
    std::vector<double> u;
    Boundary left{BoundaryKind::dirichlet, 1.0};
    Boundary right{BoundaryKind::dirichlet, 0.0};

    double x_at(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    double x_last() const { return x_at(u.size() - 1); }
    /// Linear interpolation; far-field values outside the window.
    double value_at(double x) const;
};

enum class WindowPolicy { fixed, follow, grow };

struct InitialCondition {
    enum class Kind { front_like, spark_like, hump_v, table };
    Kind kind = Kind::front_like;
    // front_like: beta * min(1, exp(-mu (x - a - Y)))
    // spark_like: beta * min(1, exp(-mu (|x - a| - L - Y)))
    double a = 0.0, Y = 0.0, mu = 1.0, beta = 1.0, L = 0.0;
    // hump_v: discrete hump for f0 at level 1 - epsilon0, support ending at x = -shift
    double shift = 0.0;
    Fn1 hump_f0;
    double epsilon0 = 0.0;
    // table: linear interpolation of (xs, us), constant beyond the ends
    std::vector<double> xs, us;
};

struct SimConfig {
    double dx = 0.05;
    std::optional<double> dt;      // default min(0.5 dx^2, 0.5 / K)
    double t_start = 0.0;
    double t_final = 10.0;
    double x_min = -50.0, x_max = 50.0;
    WindowPolicy policy = WindowPolicy::fixed;
    int margin_nodes = 40;         // nodes at each Dirichlet end that must stay settled
    double settle_tol = 1e-12;
    double chunk = 10.0;           // length added or shifted per window adjustment
    double max_width = 2e4;
    bool abort_on_breach = false;
    double snapshot_stride = 1.0;  // <= 0 disables periodic snapshots
    double snapshot_from = 0.0;
    std::vector<double> snapshot_times;
    bool track_monotonicity = false;
    std::optional<Boundary> left, right;  // override the defaults of the initial condition
    InitialCondition initial;
};

struct Snapshot {
    double t = 0.0;
    double x0 = 0.0;
    double dx = 0.0;
    std::vector<double> u;
    double left_far = 1.0, right_far = 0.0;

    double x_at(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    double x_last() const { return x_at(u.size() - 1); }
    double value_at(double x) const;
};

struct SimStats {
    long long steps = 0;
    double min_dut = 0.0;  // smallest discrete u_t seen (when tracked)
    double min_u = 1.0, max_u = 0.0;
    long long breaches = 0;
    long long translations = 0, growths = 0;
    double dt_min = 0.0, dt_max = 0.0;
    double wall_seconds = 0.0;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    SimStats stats;
    SimState final_state;
};

/// Called after every step; returning false stops the run.
using StepObserver = std::function<bool(const SimState&)>;

double default_dt(double dx, double lipschitz_K);

SimState initial_state(const SimConfig& cfg);
Snapshot snapshot_of(const SimState& s);

/// One step with the given dt: explicit reaction, clamp to [0,1], implicit diffusion.
/// Keeps a cached factorisation; reuse one instance per run.
class Stepper {
public:
    void advance(SimState& s, const ReactionSpec& f, double dt);
    /// Smallest (u_new - u_old)/dt of the last advance.
    double last_min_rate() const { return last_min_rate_; }
    bool track = false;

private:
    std::optional<ImplicitDiffusion> solver_;
    std::vector<double> prev_;
    double last_min_rate_ = 0.0;
};

/// Pure single step with the state's dt.
SimState step(const SimState& state, const ReactionSpec& f);

Trajectory simulate(const SimConfig& cfg, const ReactionSpec& f, const StepObserver& observer = {});
Trajectory simulate(SimState init, const SimConfig& cfg, const ReactionSpec& f,
                    const StepObserver& observer = {});

struct SamplePoint {
    double t, x;
};

enum class SolutionMode { super, sub };

struct ResidualOptions {
    double ht = 1e-4;
    double hx = 1e-3;
    double tol = 1e-6;
};

/// w_t - w_xx - f(., w) by centred differences at each sample.
VerdictReport check_supersolution(const std::function<double(double, double)>& w, const ReactionSpec& f,
                                  const std::vector<SamplePoint>& samples, SolutionMode mode = SolutionMode::super,
                                  const ResidualOptions& opts = {});

} // namespace frontlab
