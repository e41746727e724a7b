#include "doctest.h"

#include "frontlab/numerics.hpp"
#include "frontlab/reaction.hpp"

#include <cmath>
#include <random>

using namespace frontlab;

namespace {

// printed cubic of the time-periodic construction
double cubic_part(double u) { return (u - 0.5) * (1.0 - u) * (u - 2.0 / 3.0); }

double sampled_lipschitz(const ReactionSpec& f, double coord, int n = 4000) {
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / n, v = static_cast<double>(i + 1) / n;
        best = std::max(best, std::abs(f(coord, v) - f(coord, u)) * n);
    }
    return best;
}

} // namespace

TEST_CASE("cubic bistable values and zero extension") {
    const ReactionSpec f = make_cubic_bistable(0.25);
    CHECK(f(0.0, 0.5) == doctest::Approx(0.5 * 0.5 * 0.25));
    CHECK(f(0.0, 0.25) == 0.0);
    CHECK(f(3.0, -0.2) == 0.0);
    CHECK(f(3.0, 1.3) == 0.0);
    CHECK(f.taxonomy() == Taxonomy::pure_bistable);
    CHECK_THROWS_AS(make_cubic_bistable(1.5), std::invalid_argument);
}

TEST_CASE("g0 and g1 follow the piecewise formulas") {
    const ReactionSpec g0 = make_g0();
    CHECK(g0(0.0, 0.25) == 0.0);
    CHECK(g0(0.0, 0.75) == doctest::Approx(1.0 / 192.0).epsilon(1e-14));
    for (double u : {0.55, 0.6, 0.7, 0.8, 0.9, 0.99}) CHECK(g0(0.0, u) == doctest::Approx(cubic_part(u)).epsilon(1e-14));
    CHECK(integrate(g0_profile(), 0.0, 1.0, 1e-13) == doctest::Approx(1.0 / 576.0).epsilon(1e-9));

    const double K = 8.0;
    const ReactionSpec g1 = make_g1(K);
    CHECK(g1(0.0, 0.05) == 0.0);
    CHECK(g1(0.0, 0.6) == 0.0);
    CHECK(g1(0.0, 0.2) == doctest::Approx(K * (0.2 - 1.0 / 11.0)).epsilon(1e-14));
    CHECK(g1(0.0, 0.45) == doctest::Approx(K * 0.05).epsilon(1e-14));
    CHECK(g1(0.0, 0.8) == doctest::Approx(cubic_part(0.8)).epsilon(1e-14));
}

TEST_CASE("ignition dead zone and taxonomy") {
    const ReactionSpec f = make_ignition(0.3);
    CHECK(f(0.0, 0.15) == 0.0);
    CHECK(f(0.0, 0.6) > 0.0);
    CHECK(classify(f).taxonomy == Taxonomy::pure_ignition);
    CHECK(classify(make_cubic_bistable(0.25)).taxonomy == Taxonomy::pure_bistable);
    CHECK(classify(make_g1(0.0)).taxonomy == Taxonomy::bi);
}

TEST_CASE("sampled validation accepts the bundled families") {
    CHECK(validate(make_cubic_bistable(0.3)).pass);
    CHECK(validate(make_two_threshold_bistable(0.235, 0.25, 10.0)).pass);
    CHECK(validate(make_periodic_ignition(0.3, 2.0, 1.0, 2.0)).pass);
    CHECK(validate(make_random_ergodic(1.0, 5)).pass);
}

TEST_CASE("periodic reactions repeat and stay inside their envelopes") {
    const ReactionSpec f = make_two_threshold_bistable(0.235, 0.25, 10.0);
    const ReactionSpec g = make_periodic_ignition(0.3, 2.0, 1.0, 2.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(-40.0, 40.0), uu(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const double x = ux(rng), u = uu(rng);
        CHECK(f(x + 10.0, u) == doctest::Approx(f(x, u)).epsilon(1e-12));
        CHECK(g(x + 2.0, u) == doctest::Approx(g(x, u)).epsilon(1e-12));
        CHECK(f.envelope().f0(u) <= f(x, u) + 1e-15);
        CHECK(f(x, u) <= f.envelope().f1(u) + 1e-15);
        CHECK(g.envelope().f0(u) <= g(x, u) + 1e-15);
        CHECK(g(x, u) <= g.envelope().f1(u) + 1e-15);
    }
}

TEST_CASE("declared Lipschitz bounds dominate sampled difference quotients") {
    const std::vector<ReactionSpec> specs{make_cubic_bistable(0.1), make_g0(), make_g1(16.0), make_ignition(0.3),
                                          make_two_threshold_bistable(0.235, 0.25, 10.0),
                                          make_periodic_ignition(0.3, 2.0, 1.0, 2.0)};
    for (const auto& f : specs)
        for (double c : {0.0, 0.7, 1.9, 3.3}) CHECK(sampled_lipschitz(f, c) <= f.lipschitz_K() * (1.0 + 1e-6));
}

TEST_CASE("random ergodic media are reproducible per seed") {
    const ReactionSpec a = make_random_ergodic(1.0, 7), b = make_random_ergodic(1.0, 7), c = make_random_ergodic(1.0, 8);
    bool differs = false;
    for (double x = -20.0; x < 20.0; x += 0.37) {
        CHECK(a(x, 0.6) == b(x, 0.6));
        differs = differs || a(x, 0.6) != c(x, 0.6);
    }
    CHECK(differs);
    ErgodicLaw law;
    for (long long cell = -50; cell < 50; ++cell) {
        const double f = ergodic_cell_factor(7, cell, law);
        CHECK(f >= law.factor_min);
        CHECK(f <= law.factor_max);
    }
}

TEST_CASE("registry validates names and parameter keys") {
    CHECK(make_reaction("cubic_bistable", {{"a", 0.3}}).param("a").value() == 0.3);
    CHECK_THROWS_AS(make_reaction("cubic_bistable", {{"b", 0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(make_reaction("no_such_reaction", {}), std::invalid_argument);
    CHECK_THROWS_AS(make_reaction("random_ergodic", {}), std::invalid_argument);
    CHECK(reaction_names().size() >= 11);
    for (const auto& n : reaction_names()) {
        std::map<std::string, double> p;
        if (n == "random_ergodic") p["seed"] = 1;
        CHECK_NOTHROW(make_reaction(n, p));
    }
}

TEST_CASE("ignition gap violator has a zero stretch below theta0") {
    const ReactionSpec f = make_ignition_gap_violator(0.3, 1.0);
    CHECK(f(0.0, 0.15) > 0.0);
    CHECK(f(0.0, 0.25) == 0.0);
    CHECK(f(0.0, 0.5) > 0.0);
}
