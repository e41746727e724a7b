#include "doctest.h"

#include "frontlab/calibrate.hpp"
#include "frontlab/counterexamples.hpp"

#include <cmath>
#include <random>

using namespace frontlab;

TEST_CASE("spatial geometry constants are ordered") {
    const ReactionSpec base = make_cubic_bistable(0.25);
    const SpatialGeometry g = spatial_geometry(base.envelope().f0, 0.25);
    CHECK(g.theta0 < g.b);
    CHECK(g.b < g.p0);
    CHECK(g.p0 < g.theta0_prime);
    CHECK(g.p_min < g.theta0);
    CHECK(g.m > 0.0);
    CHECK(g.m < g.x_b);
    CHECK(g.x_b < 0.5 * g.period);
    CHECK(4.0 * g.delta * std::sqrt(g.kappa) < g.period);
    CHECK(g.a > 0.0);
    CHECK(g.a < g.theta0);
}

TEST_CASE("spatial counterexample sits above its base and repeats") {
    const ReactionSpec base = make_cubic_bistable(0.25);
    const SpatialGeometry g = spatial_geometry(base.envelope().f0, 0.25);
    const ReactionSpec f = make_spatial_counterexample(g, 64.0);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ux(-3.0 * g.period, 3.0 * g.period), uu(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const double x = ux(rng), u = uu(rng);
        REQUIRE(f(x, u) >= g.f0(u) - 1e-15);
        REQUIRE(f(x, u) <= f.envelope().f1(u) + 1e-15);
        REQUIRE(f(x + g.period, u) == doctest::Approx(f(x, u)).epsilon(1e-9));
        if (u >= g.b) REQUIRE(f(x, u) == g.f0(u));
    }
    // at the bump centres the boost starts at half the heat mass
    CHECK(f(0.0, 0.6 * g.a) > g.f0(0.6 * g.a));
    CHECK(f(0.5 * g.period, 0.6 * g.a) == g.f0(0.6 * g.a));
    CHECK(validate(f).pass);
}

TEST_CASE("temporal counterexample equals its envelopes on the pure phases") {
    const double delta = 1.0 / 8192.0, K = 256.0;
    const ReactionSpec f = make_temporal_counterexample(delta, K);
    const Fn1 lo = temporal_lower(delta), hi = temporal_upper(delta, K);
    CHECK(f.period().value() == 4.0);
    for (double u = 0.01; u < 1.0; u += 0.01) {
        for (double t : {0.0, 0.5, 1.0, 4.3, 8.9}) REQUIRE(f(t, u) == lo(u));
        for (double t : {2.0, 2.5, 3.0, 6.2}) REQUIRE(f(t, u) == hi(u));
        for (double t : {1.3, 1.7, 3.4, 3.9}) {
            REQUIRE(f(t, u) >= lo(u));
            REQUIRE(f(t, u) <= hi(u));
        }
    }
}

TEST_CASE("temporal envelopes stay within delta u of g0 and g1") {
    const double delta = 1.0 / 4096.0, K = 64.0;
    const Fn1 lo = temporal_lower(delta), hi = temporal_upper(delta, K);
    const Fn1 g0 = g0_profile(), g1 = g1_profile(K);
    for (double u = 0.001; u < 1.0; u += 0.001) {
        REQUIRE(std::abs(lo(u) - g0(u)) <= delta * u + 1e-15);
        REQUIRE(std::abs(hi(u) - g1(u)) <= delta * u + 1e-15);
        REQUIRE(lo(u) <= hi(u));
    }
    CHECK(lo(0.3) < 0.0);
    CHECK(hi(0.3) > 0.0);
}

TEST_CASE("temporal calibration items at moderate constants") {
    const double M = 7.0, a = 1.0 / 1024.0, dx = 0.1;
    CHECK(temporal_item_i(M, a, dx).pass);
    CHECK(temporal_item_ii(M, a, dx).pass);
    CHECK(temporal_item_iii(M, dx).pass);
    CHECK(temporal_item_iv(M, 2048.0, dx).pass);
}

TEST_CASE("constructor arguments are validated") {
    CHECK_THROWS_AS(make_temporal_counterexample(0.1, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(make_temporal_counterexample(1e-3, 0.5), std::invalid_argument);
    const ReactionSpec base = make_cubic_bistable(0.25);
    CHECK_THROWS_AS(make_spatial_counterexample(spatial_geometry(base.envelope().f0, 0.25), 0.5),
                    std::invalid_argument);
}
