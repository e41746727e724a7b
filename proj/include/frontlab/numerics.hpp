#pragma once

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace frontlab {

enum class ErrorCode { no_bracket, stiff_failure, hypothesis_fails, not_ignition,
                       window_cap, numeric_blowup, search_cap, insufficient_data,
                       bad_parameter };

/// Library error carrying a machine-readable code.
class FrontlabError : public std::runtime_error {
public:
    FrontlabError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }
private:
    ErrorCode code_;
};

const char* to_string(ErrorCode code);

using Fn1 = std::function<double(double)>;

/// Adaptive Simpson quadrature of f over [a, b].
double integrate(const Fn1& f, double a, double b, double tol = 1e-10);

/// Bisection for a sign change of f in [lo, hi]; throws no_bracket otherwise.
double bisect_root(const Fn1& f, double lo, double hi, double tol = 1e-10);

/// Golden-section minimisation on [lo, hi].
double golden_min(const Fn1& f, double lo, double hi, double tol = 1e-10);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;   // rms residual
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------- ODE

using Vec2 = std::array<double, 2>;
using Rhs2 = std::function<Vec2(double, const Vec2&)>;

struct OdeTolerance {
    double rtol = 1e-11;
    double atol = 1e-13;
    double h_init = 1e-3;
    double h_min = 1e-14;
    double h_max = 0.5;
};

/// Accepted step passed to the observer: endpoints and derivatives, enough
/// for cubic Hermite dense output.
struct Step2 {
    double s0, s1;
    Vec2 y0, y1, dy0, dy1;
    Vec2 at(double s) const;
};

/// Dormand-Prince 5(4) integration from (s0, y0) until s_end or until the
/// observer returns false. Returns the final (s, y).
std::pair<double, Vec2> integrate_dopri(const Rhs2& rhs, double s0, const Vec2& y0,
                                        double s_end, const OdeTolerance& tol,
                                        const std::function<bool(const Step2&)>& observer);

/// Classical RK4 step.
Vec2 rk4_step(const Rhs2& rhs, double s, const Vec2& y, double h);

// ------------------------------------------------------ tridiagonal

/// Solver for (1 + 2r) u_i - r u_{i-1} - r u_{i+1} = d_i with either
/// Dirichlet or zero-flux closure at each end. The factorisation is kept
/// so repeated solves with the same (n, r, closure) cost two sweeps.
class ImplicitDiffusion {
public:
    ImplicitDiffusion() = default;
    ImplicitDiffusion(std::size_t n, double r, bool flux_left, bool flux_right);

    /// In place. Dirichlet ends read their far-field value from bc_left/bc_right.
    void solve(std::span<double> u, double bc_left, double bc_right) const;

    std::size_t size() const { return cp_.size(); }
    double ratio() const { return r_; }
    bool flux_left() const { return flux_left_; }
    bool flux_right() const { return flux_right_; }

private:
    double r_ = 0.0;
    bool flux_left_ = false, flux_right_ = false;
    std::vector<double> cp_;   // modified super-diagonal
    std::vector<double> inv_;  // 1 / modified pivot
};

/// Linear interpolation on a uniform grid; clamps to the edge values.
double interp_uniform(std::span<const double> u, double x0, double dx, double x);

/// Deterministic uniform [0,1) value for (seed, index), usable for any index.
double hash_uniform(unsigned long long seed, long long index);

} // namespace frontlab
