#pragma once

#include "frontlab/numerics.hpp"
#include "frontlab/pdesim.hpp"
#include "frontlab/reaction.hpp"
#include "frontlab/verdict.hpp"
#include "frontlab/wavesolve.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace frontlab {

// ------------------------------------------------------------ level sets

/// Largest x with u(x) >= level, interpolated to the crossing.
std::optional<double> last_at_or_above(const Snapshot& s, double level);
/// max{y : u > level for all x < y}; empty when the left far field fails it.
std::optional<double> first_at_or_below(const Snapshot& s, double level);

// ------------------------------------------------------------ traces

struct TraceOptions {
    double zeta = 0.0;                 // decay rate squared for Y
    double x_level = 0.5;              // level defining X
    std::vector<double> eps_list{0.1, 0.01};
    bool running_max = false;          // running maxima of X and Y
    std::function<double(double)> level_at_time;  // optional time-dependent X level
};

/// Defaults from derived constants; when the front hypothesis failed the X
/// level is (theta0 + 1)/2 instead of theta1''.
TraceOptions trace_options(const DerivedConstants& dc, const EnvelopePair& env, bool hypothesis_holds);

/// NaN marks an absent entry.
struct InterfaceTrace {
    std::vector<double> times, x_half, X, Y;
    std::vector<double> eps;
    std::vector<std::vector<double>> z_minus, z_plus, width;  // [eps index][time index]

    std::size_t size() const { return times.size(); }
    std::size_t eps_index(double e) const;
};

InterfaceTrace trace_interfaces(const std::vector<Snapshot>& snaps, const TraceOptions& opts);

// ------------------------------------------------------------ fits

struct WidthFit {
    LinearFit fit;
    std::size_t samples = 0;
    double t_from = 0.0, t_to = 0.0;
};

/// Least-squares line through (t, width) over the tail fraction of the series.
/// Throws insufficient_data with fewer than min_samples finite points.
WidthFit width_growth_fit(const std::vector<double>& times, const std::vector<double>& width,
                          double burn_in_fraction = 0.5, std::size_t min_samples = 20);
WidthFit width_growth_fit(const InterfaceTrace& trace, std::size_t eps_index, double burn_in_fraction = 0.5,
                          std::size_t min_samples = 20);

/// Slope of a level-set series over t >= t_from.
LinearFit level_speed(const std::vector<double>& times, const std::vector<double>& pos, double t_from);

// ------------------------------------------------------------ shifts

struct ShiftResult {
    double shift = 0.0;
    double sup_norm = 0.0;
};

struct XRange {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

/// sup_x |b(x) - a(x - s)|.
double shifted_distance(const Snapshot& a, const Snapshot& b, double s, const XRange& range = {});
/// Minimises over s in [lo, hi] by a coarse scan plus golden-section refinement.
ShiftResult shift_distance(const Snapshot& a, const Snapshot& b, double lo, double hi, const XRange& range = {},
                           int scan_points = 201);

/// Value of a trajectory at (t, x) by linear interpolation between snapshots.
double trajectory_value(const std::vector<Snapshot>& traj, double t, double x);

/// Best time s in the trajectory span for sup_x |target(x) - w(s, x)|; shift = s - target.t.
ShiftResult time_shift_distance(const Snapshot& target, const std::vector<Snapshot>& traj, const XRange& range = {},
                                int scan_points = 401);

/// sup over snapshots with t >= t_from of |u(t + dt_shift, x) - u(t, x - dx_shift)|.
VerdictReport pulsating_check(const std::vector<Snapshot>& traj, double dt_shift, double dx_shift, double t_from,
                              double tol, const XRange& range = {});
/// Space-periodic form u(t + p/c, x) = u(t, x - p).
VerdictReport pulsating_check_space(const std::vector<Snapshot>& traj, double period, double speed, double t_from,
                                    double tol, const XRange& range = {});
/// Time-periodic form u(t + p, x) = u(t, x - p c).
VerdictReport pulsating_check_time(const std::vector<Snapshot>& traj, double period, double speed, double t_from,
                                   double tol, const XRange& range = {});

// ------------------------------------------------------------ bounds

/// C = sup |Y - X| over the trace.
double recorded_C(const InterfaceTrace& trace);

/// Smallest snapshot lag T with Z-_eps(t + T) >= X(t) for every t with both defined.
std::optional<double> empirical_T_eps(const InterfaceTrace& trace, std::size_t eps_index);

struct WidthBound {
    double bound = 0.0;   // c_xi T_eps + |log eps| / sqrt(zeta) + C
    double T_eps = 0.0;
    double C = 0.0;
    double sup_width = 0.0;
};

VerdictReport check_width_bound(const InterfaceTrace& trace, const DerivedConstants& dc, std::size_t eps_index,
                                WidthBound* out = nullptr);

/// sup |Y - X| over the late half stays within the early-half sup plus tol.
VerdictReport check_y_minus_x_bounded(const InterfaceTrace& trace, double tol = 1.0);

// ------------------------------------------------------------ ergodic speeds

struct ErgodicOptions {
    int n_max = 20;
    double dx = 0.05;
    double t_max = 2000.0;      // non-propagation horizon
    double margin_left = 20.0;  // window padding behind the hump
    double margin_right = 40.0;
    std::vector<int> sub_m{5, 10, 15};
    double sub_tol = 1e-9;      // added to one time step
    double epsilon0 = 0.0;      // <= 0 selects from the lower envelope
};

struct ErgodicResult {
    std::vector<double> tau;        // tau_{0,n} (space) or xi_{0,n} (time), n = 1..n_max
    double speed = 0.0;             // p n / tau_{0,n} or xi_{0,n} / (n p) at n = n_max
    double speed_increment = 0.0;   // from the slope over n in [n_max/2, n_max]
    std::vector<std::pair<int, double>> sub_tau;  // (m, tau_{m,n_max}) or xi_{m,n_max}
    VerdictReport subadditivity;
};

ErgodicResult ergodic_speed(const ReactionSpec& f, double cell_period, const ErgodicOptions& opts = {});

struct SeedSpread {
    std::vector<double> speeds;
    double mean = 0.0;
    double relative_spread = 0.0;  // (max - min) / mean
};
SeedSpread seed_spread(const std::vector<double>& speeds);

} // namespace frontlab
