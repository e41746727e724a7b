#include "doctest.h"

#include "frontlab/reaction.hpp"
#include "frontlab/wavesolve.hpp"

#include <cmath>

using namespace frontlab;

TEST_CASE("cubic front speed matches sqrt(2)(1/2 - a)") {
    for (double a : {0.1, 0.25, 0.4}) {
        const SpeedResult r = front_speed(make_cubic_bistable(a));
        CHECK(std::abs(r.speed - std::sqrt(2.0) * (0.5 - a)) <= 1e-6);
    }
}

TEST_CASE("cubic profile matches the exact tanh front") {
    const SpeedResult r = front_speed(make_cubic_bistable(0.25));
    for (double s = -8.0; s <= 8.0; s += 0.5) {
        const double exact = 1.0 / (1.0 + std::exp(s / std::sqrt(2.0)));
        CHECK(r.profile(s) == doctest::Approx(exact).epsilon(1e-5));
    }
    CHECK(r.profile.residual_max(make_cubic_bistable(0.25).slice(0.0)) < 1e-4);
}

TEST_CASE("balanced cubic has a standing front") {
    CHECK(std::abs(front_speed(make_cubic_bistable(0.5)).speed) < 1e-6);
}

TEST_CASE("front speed of g0 is positive and resolution independent") {
    SpeedOptions fine;
    fine.profile_step = 0.005;
    fine.offset = 1e-9;
    const double c1 = front_speed(g0_profile()).speed;
    const double c2 = front_speed(g0_profile(), fine).speed;
    CHECK(c1 > 0.0);
    CHECK(std::abs(c1 - c2) < 1e-6);
}

TEST_CASE("ignition front profile is monotone") {
    const SpeedResult r = front_speed(make_ignition(0.3));
    CHECK(r.speed > 0.0);
    const auto& W = r.profile.values();
    for (std::size_t i = 1; i < W.size(); ++i) CHECK(W[i] <= W[i - 1] + 1e-12);
}

TEST_CASE("antiderivative table integrates the cubic exactly") {
    const Fn1 f = make_cubic_bistable(0.25).slice(0.0);
    const auto F = antiderivative_table(f, 64);
    const double F1 = 1.0 / 12.0 - 0.25 / 12.0 * 2.0;  // int u(1-u)(u-a) = 1/12 - a/6
    CHECK(F.back() == doctest::Approx(F1).epsilon(1e-12));
}

TEST_CASE("second threshold of the cubic is the root of its antiderivative") {
    // F(t) = t^2 (-t^2/4 + (1+a) t/3 - a/2) vanishes at t^2 - (5/3) t + 1/2 = 0 for a = 1/4
    const double exact = (5.0 / 3.0 - std::sqrt(25.0 / 9.0 - 2.0)) / 2.0;
    CHECK(theta_prime(make_cubic_bistable(0.25).slice(0.0), 0.25) == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("periodic stationary solution conserves its first integral") {
    const Fn1 f0 = make_cubic_bistable(0.25).slice(0.0);
    const PeriodicProfile p = periodic_stationary(f0, 0.25, 0.356781);
    CHECK_FALSE(p.degenerate);
    CHECK(p.energy_drift < 1e-9);
    CHECK(p(0.0) == doctest::Approx(0.356781).epsilon(1e-9));
    for (double x : {0.3, 1.7, 4.2}) {
        CHECK(p(x) == doctest::Approx(p(-x)).epsilon(1e-9));
        CHECK(p(x) == doctest::Approx(p(x + p.period)).epsilon(1e-7));
    }
}

TEST_CASE("hump profile is a monotone subsolution plateau") {
    const Fn1 f0 = make_cubic_bistable(0.25).slice(0.0);
    const double e0 = select_epsilon0(f0, 0.25);
    const HumpProfile v = build_hump_v(f0, e0);
    CHECK(v.first_integral_error < 1e-9);
    CHECK(v(-v.r - 1.0) == doctest::Approx(1.0 - e0));
    CHECK(v(0.5) == 0.0);
    for (double x = -v.r; x < 0.0; x += v.r / 50.0) CHECK(v.derivative(x) <= 1e-12);
}

TEST_CASE("discrete hump satisfies its recursion exactly") {
    const Fn1 f0 = make_cubic_bistable(0.25).slice(0.0);
    const double dx = 0.05;
    const auto V = discrete_hump(f0, 0.1, dx);
    REQUIRE(V.size() > 3);
    CHECK(V.front() == doctest::Approx(0.9));
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < V.size(); ++i)
        if (V[i] > 0.0) last_positive = i;
    for (std::size_t i = 1; i < last_positive; ++i)
        CHECK(V[i + 1] == doctest::Approx(2.0 * V[i] - V[i - 1] - dx * dx * f0(V[i])).epsilon(1e-14));
}

TEST_CASE("front hypothesis and derived constants on a compliant periodic medium") {
    const ReactionSpec f = make_two_threshold_bistable(0.235, 0.25, 10.0);
    const VerdictReport h = check_front_hypothesis(f, HypothesisVariant::space);
    CHECK(h.pass);
    CHECK(h.margin > 0.0);
    const double c0 = front_speed(f.envelope().f0).speed;
    const DerivedConstants dc = derive_constants(f.envelope(), c0);
    CHECK(dc.epsilon0 > 0.0);
    CHECK(dc.epsilon0 < f.envelope().theta0);
    CHECK(dc.c_zeta == doctest::Approx(2.0 * std::sqrt(dc.zeta)));
    CHECK(dc.zeta < c0 * c0 / 4.0);
}

TEST_CASE("front hypothesis fails for a wide threshold gap") {
    const ReactionSpec f = make_two_threshold_bistable(0.05, 0.45, 10.0);
    const VerdictReport h = check_front_hypothesis(f, HypothesisVariant::space);
    CHECK_FALSE(h.pass);
    CHECK_FALSE(h.witnesses.empty());
    const double c0 = front_speed(f.envelope().f0).speed;
    CHECK_THROWS_AS(derive_constants(f.envelope(), c0), FrontlabError);
}

TEST_CASE("ignition non-vanishing condition") {
    const ReactionSpec good = make_ignition(0.3);
    const double c0 = front_speed(good.envelope().f0).speed;
    const VerdictReport ok = check_ignition_hypothesis(good, c0 * c0 / 8.0, 0.0);
    CHECK(ok.pass);
    CHECK(ok.values.at("eta_star") > 0.0);

    const ReactionSpec bad = make_ignition_gap_violator();
    const double cb = front_speed(bad.envelope().f0).speed;
    const VerdictReport ko = check_ignition_hypothesis(bad, cb * cb / 8.0, 0.0);
    CHECK_FALSE(ko.pass);
    REQUIRE_FALSE(ko.witnesses.empty());
    CHECK(ko.witnesses.front().value == 0.0);

    CHECK_THROWS_AS(check_ignition_hypothesis(make_cubic_bistable(0.25), 0.01, 0.0), FrontlabError);
}

TEST_CASE("wave-blocking core is an exact stationary solution") {
    const WaveBlockingCore core = make_wave_blocking_core();
    double worst = 0.0;
    for (double x = -50.0; x <= 50.0; x += 0.01) worst = std::max(worst, std::abs(core.v_second(x) + core.g(0.0, core.v(x))));
    CHECK(worst < 1e-10);
    CHECK(core.v(0.0) == doctest::Approx(0.5));
}

TEST_CASE("degenerate ignition speed is bracketed and ordered") {
    IgnitionShape quad;
    quad.exponent = 2.0;
    const ReactionSpec f2 = make_ignition(0.3, quad);
    const SpeedResult r2 = front_speed(f2);
    const double c1 = front_speed(make_ignition(0.3)).speed;
    // (u - theta)^2 <= (u - theta) on [theta, 1], so the front is slower
    CHECK(r2.speed > 0.0);
    CHECK(r2.speed < c1);
    CHECK(r2.bracket_hi - r2.bracket_lo < 1e-8);
    CHECK(r2.profile.residual_max(f2.slice(0.0)) < 1e-4);
}
