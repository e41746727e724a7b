#include "doctest.h"

#include "frontlab/diagnostics.hpp"

#include <cmath>

using namespace frontlab;

namespace {

const double kSpeed = std::sqrt(2.0) * 0.25;  // cubic with a = 1/4

double wave(double s) { return 1.0 / (1.0 + std::exp(s / std::sqrt(2.0))); }

Snapshot wave_snapshot(double t, double shift = 0.0, double x_min = -40.0, double x_max = 60.0, double dx = 0.02) {
    Snapshot s;
    s.t = t;
    s.x0 = x_min;
    s.dx = dx;
    const auto n = static_cast<std::size_t>(std::llround((x_max - x_min) / dx)) + 1;
    for (std::size_t i = 0; i < n; ++i) s.u.push_back(wave(s.x_at(i) - kSpeed * t - shift));
    return s;
}

std::vector<Snapshot> wave_trajectory(double t_end, double stride) {
    std::vector<Snapshot> out;
    for (double t = 0.0; t <= t_end + 1e-9; t += stride) out.push_back(wave_snapshot(t));
    return out;
}

} // namespace

TEST_CASE("level sets of the exact wave") {
    const Snapshot s = wave_snapshot(0.0);
    const double x_level = std::sqrt(2.0) * std::log(1.0 / 0.2 - 1.0);  // wave(x) = 0.2
    CHECK(last_at_or_above(s, 0.2).value() == doctest::Approx(x_level).epsilon(1e-4));
    CHECK(first_at_or_below(s, 0.2).value() == doctest::Approx(x_level).epsilon(1e-4));
    CHECK_FALSE(last_at_or_above(s, 1.5).has_value());
}

TEST_CASE("trace slopes and widths on a translating wave") {
    TraceOptions o;
    o.zeta = 0.01;
    o.x_level = 0.5;
    o.eps_list = {0.1, 0.01};
    const InterfaceTrace tr = trace_interfaces(wave_trajectory(40.0, 1.0), o);
    REQUIRE(tr.size() == 41);
    CHECK(level_speed(tr.times, tr.x_half, 0.0).slope == doctest::Approx(kSpeed).epsilon(1e-6));
    CHECK(level_speed(tr.times, tr.X, 0.0).slope == doctest::Approx(kSpeed).epsilon(1e-6));
    const WidthFit wf = width_growth_fit(tr, tr.eps_index(0.1));
    CHECK(std::abs(wf.fit.slope) < 1e-6);
    // profile width between 1 - eps and eps is 2 sqrt(2) log(1/eps - 1)
    const double w_exact = 2.0 * std::sqrt(2.0) * std::log(9.0);
    CHECK(tr.width[tr.eps_index(0.1)].back() == doctest::Approx(w_exact).epsilon(1e-3));
    CHECK(check_y_minus_x_bounded(tr).pass);
    CHECK(recorded_C(tr) < 1e9);
}

TEST_CASE("width fit needs enough samples") {
    const std::vector<double> t{0, 1, 2}, w{1, 1, 1};
    try {
        width_growth_fit(t, w);
        FAIL("expected insufficient_data");
    } catch (const FrontlabError& e) {
        CHECK(e.code() == ErrorCode::insufficient_data);
    }
}

TEST_CASE("shift distance recovers a known translation") {
    const Snapshot a = wave_snapshot(0.0), b = wave_snapshot(0.0, 3.3);
    CHECK(shifted_distance(a, a, 0.0) < 1e-12);
    const ShiftResult r = shift_distance(a, b, -10.0, 10.0, XRange{-20.0, 20.0});
    CHECK(r.shift == doctest::Approx(3.3).epsilon(1e-4));
    CHECK(r.sup_norm < 1e-4);
}

TEST_CASE("time shift against a trajectory") {
    const auto traj = wave_trajectory(40.0, 0.5);
    const Snapshot target = wave_snapshot(10.0, kSpeed * 7.25);  // equals the wave at t = 17.25
    const ShiftResult r = time_shift_distance(target, traj, XRange{-20.0, 40.0});
    CHECK(r.shift == doctest::Approx(7.25).epsilon(1e-3));
    CHECK(r.sup_norm < 1e-3);
    CHECK(trajectory_value(traj, 17.25, 3.0) == doctest::Approx(wave(3.0 - kSpeed * 17.25)).epsilon(1e-3));
}

TEST_CASE("pulsating identity holds on the exact wave") {
    const auto traj = wave_trajectory(40.0, 0.25);
    const double p = 2.0;
    const VerdictReport v = pulsating_check_space(traj, p, kSpeed, 5.0, 1e-2, XRange{-20.0, 40.0});
    CHECK(v.pass);
    const VerdictReport wrong = pulsating_check_space(traj, p, 2.0 * kSpeed, 5.0, 1e-2, XRange{-20.0, 40.0});
    CHECK_FALSE(wrong.pass);
}

TEST_CASE("seed spread statistics") {
    const SeedSpread s = seed_spread({1.0, 1.1, 0.9});
    CHECK(s.mean == doctest::Approx(1.0));
    CHECK(s.relative_spread == doctest::Approx(0.2));
}

TEST_CASE("ergodic speed of a homogeneous medium equals its front speed") {
    const ReactionSpec f = make_ignition(0.3);
    const double c = front_speed(f).speed;
    ErgodicOptions o;
    o.n_max = 10;
    o.sub_m = {5};
    const ErgodicResult r = ergodic_speed(f, 1.0, o);
    REQUIRE(r.tau.size() == 10);
    for (std::size_t i = 1; i < r.tau.size(); ++i) CHECK(r.tau[i] > r.tau[i - 1]);
    CHECK(r.speed_increment == doctest::Approx(c).epsilon(0.02));
    CHECK(r.subadditivity.pass);
}
