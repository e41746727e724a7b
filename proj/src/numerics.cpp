#include "frontlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frontlab {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::no_bracket: return "no bracket";
    case ErrorCode::stiff_failure: return "stiff failure";
    case ErrorCode::hypothesis_fails: return "hypothesis fails";
    case ErrorCode::not_ignition: return "not ignition";
    case ErrorCode::window_cap: return "window growth exceeded cap";
    case ErrorCode::numeric_blowup: return "numeric blowup";
    case ErrorCode::search_cap: return "search cap reached";
    case ErrorCode::insufficient_data: return "insufficient data";
    case ErrorCode::bad_parameter: return "bad parameter";
    }
    return "unknown";
}

namespace {

double simpson_rec(const Fn1& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol)
        return left + right + diff / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate(const Fn1& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    if (a > b) return -integrate(f, b, a, tol);
    // Split once so that piecewise integrands with kinks at simple
    // fractions are not sampled symmetrically into a false zero.
    const int pieces = 8;
    double total = 0.0;
    for (int k = 0; k < pieces; ++k) {
        const double lo = a + (b - a) * k / pieces;
        const double hi = (k + 1 == pieces) ? b : a + (b - a) * (k + 1) / pieces;
        const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson_rec(f, lo, hi, fa, fm, fb, whole, tol / pieces, 48);
    }
    return total;
}

double bisect_root(const Fn1& f, double lo, double hi, double tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw FrontlabError(ErrorCode::no_bracket, "bisect_root: no sign change");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) { lo = mid; flo = fm; }
        else { hi = mid; }
    }
    return 0.5 * (lo + hi);
}

double golden_min(const Fn1& f, double lo, double hi, double tol) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > tol) {
        if (fc <= fd) { hi = d; d = c; fd = fc; c = hi - g * (hi - lo); fc = f(c); }
        else { lo = c; c = d; fc = fd; d = lo + g * (hi - lo); fd = f(d); }
    }
    return fc <= fd ? c : d;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw FrontlabError(ErrorCode::insufficient_data, "fit_line: need two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit fit;
    fit.slope = sxx > 0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - fit.intercept - fit.slope * x[i];
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

Vec2 Step2::at(double s) const {
    const double h = s1 - s0;
    if (h == 0.0) return y0;
    const double t = (s - s0) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    Vec2 out;
    for (int k = 0; k < 2; ++k)
        out[k] = h00 * y0[k] + h10 * h * dy0[k] + h01 * y1[k] + h11 * h * dy1[k];
    return out;
}

std::pair<double, Vec2> integrate_dopri(const Rhs2& rhs, double s0, const Vec2& y0,
                                        double s_end, const OdeTolerance& tol,
                                        const std::function<bool(const Step2&)>& observer) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double dir = s_end >= s0 ? 1.0 : -1.0;
    double s = s0;
    Vec2 y = y0;
    Vec2 k1 = rhs(s, y);
    double h = std::min(tol.h_init, std::abs(s_end - s0));
    while (dir * (s_end - s) > 0) {
        if (h < tol.h_min)
            throw FrontlabError(ErrorCode::stiff_failure, "ODE step size underflow");
        h = std::min({h, tol.h_max, std::abs(s_end - s)});
        const double hs = dir * h;
        auto add = [&](std::initializer_list<std::pair<double, const Vec2*>> terms) {
            Vec2 out = y;
            for (auto& [c, k] : terms) { out[0] += hs * c * (*k)[0]; out[1] += hs * c * (*k)[1]; }
            return out;
        };
        const Vec2 k2 = rhs(s + c2 * hs, add({{a21, &k1}}));
        const Vec2 k3 = rhs(s + c3 * hs, add({{a31, &k1}, {a32, &k2}}));
        const Vec2 k4 = rhs(s + c4 * hs, add({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const Vec2 k5 = rhs(s + c5 * hs, add({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const Vec2 k6 = rhs(s + hs, add({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const Vec2 ynew = add({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const Vec2 k7 = rhs(s + hs, ynew);
        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = tol.atol + tol.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err = std::max(err, std::abs(e) / sc);
        }
        if (!std::isfinite(err))
            throw FrontlabError(ErrorCode::numeric_blowup, "ODE state is not finite");
        if (err <= 1.0) {
            Step2 st{s, s + hs, y, ynew, k1, k7};
            s += hs;
            y = ynew;
            k1 = k7;
            if (observer && !observer(st)) break;
        }
        const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= fac;
    }
    return {s, y};
}

Vec2 rk4_step(const Rhs2& rhs, double s, const Vec2& y, double h) {
    const Vec2 k1 = rhs(s, y);
    const Vec2 k2 = rhs(s + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const Vec2 k3 = rhs(s + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const Vec2 k4 = rhs(s + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
    return {y[0] + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
}

ImplicitDiffusion::ImplicitDiffusion(std::size_t n, double r, bool flux_left, bool flux_right)
    : r_(r), flux_left_(flux_left), flux_right_(flux_right), cp_(n), inv_(n) {
    if (n < 2) throw std::invalid_argument("ImplicitDiffusion: need at least two nodes");
    double prev_cp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 1.0 + 2.0 * r;
        if (i == 0 && flux_left) diag = 1.0 + r;
        if (i + 1 == n && flux_right) diag = 1.0 + r;
        const double pivot = diag - (i == 0 ? 0.0 : -r * prev_cp);
        inv_[i] = 1.0 / pivot;
        cp_[i] = -r * inv_[i];
        prev_cp = cp_[i];
    }
}

void ImplicitDiffusion::solve(std::span<double> u, double bc_left, double bc_right) const {
    const std::size_t n = cp_.size();
    if (u.size() != n) throw std::invalid_argument("ImplicitDiffusion: size mismatch");
    if (!flux_left_) u[0] += r_ * bc_left;
    if (!flux_right_) u[n - 1] += r_ * bc_right;
    // forward sweep: d'_i = (d_i + r d'_{i-1}) / pivot_i
    u[0] *= inv_[0];
    for (std::size_t i = 1; i < n; ++i) u[i] = (u[i] + r_ * u[i - 1]) * inv_[i];
    for (std::size_t i = n - 1; i-- > 0;) u[i] -= cp_[i] * u[i + 1];
}

double interp_uniform(std::span<const double> u, double x0, double dx, double x) {
    const double pos = (x - x0) / dx;
    if (pos <= 0.0) return u.front();
    const auto n = u.size();
    if (pos >= static_cast<double>(n - 1)) return u.back();
    const auto i = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * u[i] + w * u[i + 1];
}

double hash_uniform(unsigned long long seed, long long index) {
    // splitmix64 finaliser over a seed/index mix
    unsigned long long z = seed * 0x9E3779B97F4A7C15ULL +
                           static_cast<unsigned long long>(index) * 0xBF58476D1CE4E5B9ULL +
                           0x94D049BB133111EBULL;
    for (int round = 0; round < 2; ++round) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
    }
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

} // namespace frontlab
