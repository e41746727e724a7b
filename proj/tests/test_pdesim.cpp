#include "doctest.h"

#include "frontlab/pdesim.hpp"
#include "frontlab/reaction.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace frontlab;

namespace {

SimState grid_state(double x_min, double x_max, double dx, const std::function<double(double)>& u0) {
    SimState s;
    s.x0 = x_min;
    s.dx = dx;
    const auto n = static_cast<std::size_t>(std::llround((x_max - x_min) / dx)) + 1;
    for (std::size_t i = 0; i < n; ++i) s.u.push_back(u0(s.x_at(i)));
    return s;
}

double last_front(const SimState& s) {
    for (std::size_t i = s.u.size(); i-- > 0;)
        if (s.u[i] >= 0.5) return s.x_at(i);
    return s.x0;
}

double mass(const SimState& s) { return std::accumulate(s.u.begin(), s.u.end(), 0.0) * s.dx; }

} // namespace

TEST_CASE("default time step respects diffusion and reaction limits") {
    CHECK(default_dt(0.05, 1.0) == doctest::Approx(0.5 * 0.05 * 0.05));
    CHECK(default_dt(0.05, 1000.0) == doctest::Approx(0.5 / 1000.0));
}

TEST_CASE("step rejects invalid time steps") {
    SimState s = grid_state(0.0, 5.0, 0.1, [](double) { return 0.5; });
    const ReactionSpec f = make_cubic_bistable(0.25);
    s.dt = 0.0;
    CHECK_THROWS_AS(step(s, f), std::invalid_argument);
    s.dt = 2.0 / f.lipschitz_K();
    CHECK_THROWS_AS(step(s, f), std::invalid_argument);
}

TEST_CASE("zero-flux ends conserve mass under pure diffusion") {
    // g0 vanishes on [0, 1/2] and the data stay there
    SimState s = grid_state(-10.0, 10.0, 0.05, [](double x) { return 0.4 * std::exp(-x * x); });
    s.left = {BoundaryKind::zero_flux, 0.0};
    s.right = {BoundaryKind::zero_flux, 0.0};
    const double m0 = mass(s);
    Stepper st;
    const ReactionSpec g0 = make_g0();
    for (int k = 0; k < 2000; ++k) st.advance(s, g0, 0.01);
    CHECK(mass(s) == doctest::Approx(m0).epsilon(1e-12));
}

TEST_CASE("heat kernel oracle") {
    SimConfig c;
    c.dx = 0.02;
    c.dt = 1e-4;
    c.x_min = -30.0;
    c.x_max = 30.0;
    c.t_final = 2.0;
    c.snapshot_stride = 0.0;
    c.left = Boundary{BoundaryKind::dirichlet, 0.0};
    c.right = Boundary{BoundaryKind::dirichlet, 0.0};
    c.initial.kind = InitialCondition::Kind::table;
    for (double x = -30.0; x <= 30.0 + 1e-9; x += 0.01) {
        c.initial.xs.push_back(x);
        c.initial.us.push_back(0.4 * std::exp(-x * x / 4.0));
    }
    const Trajectory tr = simulate(c, make_g0());
    const Snapshot& end = tr.snapshots.back();
    CHECK(end.t == doctest::Approx(2.0));
    double worst = 0.0;
    for (std::size_t i = 0; i < end.u.size(); ++i) {
        const double x = end.x_at(i);
        worst = std::max(worst, std::abs(end.u[i] - 0.4 / std::sqrt(3.0) * std::exp(-x * x / 12.0)));
    }
    CHECK(worst < 2e-4);
}

TEST_CASE("comparison principle on random ordered pairs") {
    const ReactionSpec f = make_two_threshold_bistable(0.235, 0.25, 10.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int pair = 0; pair < 10; ++pair) {
        SimState lo = grid_state(-10.0, 10.0, 0.1, [&](double) { return unit(rng); });
        SimState hi = lo;
        for (auto& v : hi.u) v = std::min(1.0, v + 0.2 * unit(rng));
        Stepper a, b;
        const double dt = default_dt(0.1, f.lipschitz_K());
        for (int k = 0; k < 500; ++k) {
            a.advance(lo, f, dt);
            b.advance(hi, f, dt);
        }
        for (std::size_t i = 0; i < lo.u.size(); ++i) REQUIRE(lo.u[i] <= hi.u[i] + 1e-14);
        for (double v : hi.u) {
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
    }
}

TEST_CASE("shifting the data by a period shifts the solution") {
    const ReactionSpec f = make_two_threshold_bistable(0.235, 0.25, 10.0);
    auto run = [&](double a) {
        SimConfig c;
        c.dx = 0.05;
        c.x_min = -40.0;
        c.x_max = 60.0;
        c.t_final = 5.0;
        c.snapshot_stride = 0.0;
        c.initial.kind = InitialCondition::Kind::front_like;
        c.initial.a = a;
        c.initial.mu = 2.0;
        return simulate(c, f).snapshots.back();
    };
    const Snapshot s0 = run(0.0), s1 = run(10.0);
    for (double x = -20.0; x <= 20.0; x += 0.05) CHECK(s1.value_at(x + 10.0) == doctest::Approx(s0.value_at(x)).epsilon(1e-10));
}

TEST_CASE("snapshots land on requested times") {
    SimConfig c;
    c.dx = 0.1;
    c.x_min = -20.0;
    c.x_max = 20.0;
    c.t_final = 3.0;
    c.snapshot_stride = 1.0;
    c.snapshot_times = {0.37, 2.5};
    const Trajectory tr = simulate(c, make_cubic_bistable(0.25));
    std::vector<double> ts;
    for (const auto& s : tr.snapshots) ts.push_back(s.t);
    const std::vector<double> want{0.0, 0.37, 1.0, 2.0, 2.5, 3.0};
    REQUIRE(ts.size() == want.size());
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(ts[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("follow window tracks the front and the cap is enforced") {
    SimConfig c;
    c.dx = 0.1;
    c.x_min = -60.0;
    c.x_max = 20.0;
    c.t_final = 60.0;
    c.snapshot_stride = 0.0;
    c.policy = WindowPolicy::follow;
    const Trajectory tr = simulate(c, make_cubic_bistable(0.1));
    CHECK(tr.stats.translations > 0);
    CHECK(tr.final_state.x0 > -60.0);
    CHECK(tr.final_state.x_last() - tr.final_state.x0 <= 120.0);
    CHECK(last_front(tr.final_state) == doctest::Approx(std::sqrt(2.0) * 0.4 * 60.0).epsilon(0.05));

    c.policy = WindowPolicy::grow;
    c.max_width = 85.0;
    try {
        simulate(c, make_cubic_bistable(0.1));
        FAIL("expected window_cap");
    } catch (const FrontlabError& e) {
        CHECK(e.code() == ErrorCode::window_cap);
    }
}

TEST_CASE("exact cubic wave has zero residual") {
    const double a = 0.25, c = std::sqrt(2.0) * (0.5 - a);
    const auto w = [c](double t, double x) { return 1.0 / (1.0 + std::exp((x - c * t) / std::sqrt(2.0))); };
    std::vector<SamplePoint> pts;
    for (double t : {0.0, 1.0, 5.0})
        for (double x = -10.0; x <= 10.0; x += 0.5) pts.push_back({t, x});
    CHECK(check_supersolution(w, make_cubic_bistable(a), pts, SolutionMode::super).pass);
    CHECK(check_supersolution(w, make_cubic_bistable(a), pts, SolutionMode::sub).pass);
    // the constant 1/2 is a strict subsolution for a < 1/2
    const auto half = [](double, double) { return 0.5; };
    CHECK_FALSE(check_supersolution(half, make_cubic_bistable(a), pts, SolutionMode::super).pass);
}
