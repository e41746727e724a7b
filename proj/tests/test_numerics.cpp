#include "doctest.h"

#include "frontlab/numerics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace frontlab;

TEST_CASE("quadrature of smooth integrands") {
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(integrate([](double x) { return x * x * x; }, -1.0, 2.0) == doctest::Approx(15.0 / 4.0).epsilon(1e-12));
}

TEST_CASE("bisection and golden section") {
    CHECK(bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-13) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    try {
        bisect_root([](double x) { return x * x + 1.0; }, -1.0, 1.0);
        FAIL("expected no_bracket");
    } catch (const FrontlabError& e) {
        CHECK(e.code() == ErrorCode::no_bracket);
    }
    CHECK(golden_min([](double x) { return (x - 1.3) * (x - 1.3); }, 0.0, 3.0, 1e-10) == doctest::Approx(1.3).epsilon(1e-8));
}

TEST_CASE("least squares line recovers an exact line") {
    std::vector<double> x{0, 1, 2, 3, 4}, y;
    for (double v : x) y.push_back(2.5 * v - 1.0);
    const LinearFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.5));
    CHECK(f.intercept == doctest::Approx(-1.0));
    CHECK(f.residual < 1e-12);
}

TEST_CASE("Dormand-Prince integrates the harmonic oscillator") {
    const Rhs2 rhs = [](double, const Vec2& y) { return Vec2{y[1], -y[0]}; };
    const auto [s, y] = integrate_dopri(rhs, 0.0, {1.0, 0.0}, 3.0, OdeTolerance{}, {});
    CHECK(s == doctest::Approx(3.0));
    CHECK(y[0] == doctest::Approx(std::cos(3.0)).epsilon(1e-9));
    CHECK(y[1] == doctest::Approx(-std::sin(3.0)).epsilon(1e-9));
}

TEST_CASE("RK4 step has fifth-order local error") {
    const Rhs2 rhs = [](double, const Vec2& y) { return Vec2{y[0], 0.0}; };
    const double e1 = std::abs(rk4_step(rhs, 0.0, {1.0, 0.0}, 0.1)[0] - std::exp(0.1));
    const double e2 = std::abs(rk4_step(rhs, 0.0, {1.0, 0.0}, 0.05)[0] - std::exp(0.05));
    CHECK(e1 / e2 == doctest::Approx(32.0).epsilon(0.1));
}

namespace {

// applies the implicit diffusion matrix to x
std::vector<double> apply(const std::vector<double>& x, double r, bool fl, bool fr, double bl, double br) {
    const std::size_t n = x.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i == 0 ? (fl ? x[0] : bl) : x[i - 1];
        const double right = i + 1 == n ? (fr ? x[n - 1] : br) : x[i + 1];
        out[i] = (1.0 + 2.0 * r) * x[i] - r * left - r * right;
    }
    return out;
}

} // namespace

TEST_CASE("tridiagonal solve inverts the diffusion matrix for every closure") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (bool fl : {false, true})
        for (bool fr : {false, true}) {
            const double r = 3.7;
            std::vector<double> d(57);
            for (auto& v : d) v = unit(rng);
            std::vector<double> x = d;
            ImplicitDiffusion solver(x.size(), r, fl, fr);
            solver.solve(x, 1.0, 0.25);
            const auto back = apply(x, r, fl, fr, 1.0, 0.25);
            for (std::size_t i = 0; i < d.size(); ++i) CHECK(back[i] == doctest::Approx(d[i]).epsilon(1e-12));
        }
}

TEST_CASE("uniform interpolation and deterministic hashing") {
    std::vector<double> u{0.0, 1.0, 4.0};
    CHECK(interp_uniform(u, 0.0, 1.0, 1.5) == doctest::Approx(2.5));
    CHECK(interp_uniform(u, 0.0, 1.0, -3.0) == 0.0);
    CHECK(interp_uniform(u, 0.0, 1.0, 7.0) == 4.0);

    double sum = 0.0;
    for (long long k = 0; k < 100000; ++k) {
        const double h = hash_uniform(42, k);
        REQUIRE(h >= 0.0);
        REQUIRE(h < 1.0);
        sum += h;
    }
    CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
    CHECK(hash_uniform(42, -17) == hash_uniform(42, -17));
    CHECK(hash_uniform(42, 3) != hash_uniform(43, 3));
}
