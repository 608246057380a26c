#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "singorb/closed_form.hpp"
#include "singorb/companion.hpp"
#include "singorb/constants.hpp"
#include "singorb/energy.hpp"
#include "singorb/numeric.hpp"

using namespace singorb;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

TEST_CASE("rhs: pinned values and singular set") {
    CHECK(rhs(0.0, 0.7) == 0.0);
    CHECK(rhs(kPi / 4.0, 0.5) == 0.0);
    CHECK(rhs(kPi / 4.0, 0.75) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK_THROWS_AS(rhs(kPi / 2.0, 0.3), error);
}

TEST_CASE("rhs_regularized: limiting values and shell behavior") {
    CHECK(rhs_regularized(kPi / 2.0, 1.0, 8.0) ==
          doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-14));
    CHECK(rhs_regularized(kPi / 2.0, 1.0, 8.0) ==
          doctest::Approx(0.353553390593273762).epsilon(1e-14));
    CHECK(rhs_regularized(3.0 * kPi / 2.0, 1.0, 8.0) ==
          doctest::Approx(-1.0 / std::sqrt(8.0)).epsilon(1e-14));

    // outside the shell it coincides with the raw field
    const double x = std::acos(0.5);
    CHECK(rhs_regularized(x, 0.9, 8.0) == rhs(x, 0.9));

    CHECK_THROWS_AS(rhs_regularized(kPi / 2.0, 1.0, -1.0), error);
    CHECK_THROWS_AS(rhs_regularized(kPi / 2.0, 1.0, 0.0), error);

    // branch-aware variant flips sign for b > 1 orbits
    CHECK(rhs_regularized(kPi / 2.0, 1.0, 8.0, -1) ==
          doctest::Approx(-1.0 / std::sqrt(8.0)).epsilon(1e-14));
}

TEST_CASE("rhs_regularized: continuity across the shell on level states") {
    // states taken on the c = 8 level from the b = 3/4 orbit near its first
    // crossing, where sign((1-v) cos x) = +1
    const OrbitParams p = make_orbit(0.0, 0.75);
    const double t0 = std::acos(-1.0 / 3.0);
    int tested = 0;
    for (int i = -600; i <= 600; ++i) {
        const double t = t0 + 6e-6 * i;
        const double x = x_closed(p, t);
        const double v = xdot_closed(p, t);
        const double ax = std::abs(std::cos(x));
        if (ax < tol::regularization_shell || ax > 2.0 * tol::regularization_shell) continue;
        CHECK(std::abs(rhs_regularized(x, v, 8.0) - rhs(x, v)) <= 1e-6);
        ++tested;
    }
    CHECK(tested > 20);

    // the closed form's own acceleration approaches the regularized value
    const double h = 1e-6;
    const double accel = (xdot_closed(p, t0 + h) - xdot_closed(p, t0 - h)) / (2.0 * h);
    CHECK(accel == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-8));

    // and the b = 3/2 orbit (same level) crosses with the opposite sign
    const OrbitParams q = make_orbit(0.0, 1.5);
    const double s0 = std::acos(1.0 / 3.0);
    const double accel_q = (xdot_closed(q, s0 + h) - xdot_closed(q, s0 - h)) / (2.0 * h);
    CHECK(accel_q == doctest::Approx(-1.0 / std::sqrt(8.0)).epsilon(1e-8));
}

TEST_CASE("integrate: oracle equivalence on the figure parameter sets") {
    for (double b : {0.25, -0.4, 0.75, 1.5}) {
        const OrbitParams p = make_orbit(0.0, b);
        const TimeSeries ts = integrate(p, 0.0, 10.0, 1e-10);
        REQUIRE(ts.samples.size() > 100);
        double prev_t = -1.0;
        double worst = 0.0;
        for (const Sample& s : ts.samples) {
            CHECK(s.t > prev_t);
            prev_t = s.t;
            worst = std::max(worst, std::abs(s.x - x_closed(p, s.t)));
        }
        CHECK(worst <= tol::oracle_sup);
        CHECK(ts.samples.front().t == 0.0);
        CHECK(ts.samples.back().t == 10.0);
    }
}

TEST_CASE("integrate: energy drift stays small over [0, 20]") {
    for (double b : {0.25, -0.4, 0.75, 1.5}) {
        const OrbitParams p = make_orbit(0.0, b);
        const TimeSeries ts = integrate(p, 0.0, 20.0, 1e-10);
        double worst = 0.0;
        for (const Sample& s : ts.samples) worst = std::max(worst, std::abs(s.residual));
        CHECK(worst <= tol::energy_drift);
    }
}

TEST_CASE("integrate: events") {
    // unbounded orbit: interface crossings at the closed-form times
    const OrbitParams up = make_orbit(0.0, 0.75);
    const TimeSeries ts = integrate(up, 0.0, 10.0, 1e-10);
    const std::vector<double> expected = crossing_times(up, 0, 2);
    REQUIRE(ts.events.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(ts.events[i].kind == EventKind::interface_crossing);
        CHECK(std::abs(ts.events[i].t - expected[i]) <= 1e-8);
        const double k = std::round(ts.events[i].x / kPi - 0.5);
        CHECK(ts.events[i].x == (k + 0.5) * kPi);  // snapped exactly
        CHECK(ts.events[i].xdot == 1.0);
    }

    // periodic orbit: turning points where the closed-form velocity vanishes
    const OrbitParams lo = make_orbit(0.0, 0.25);
    const TimeSeries ps = integrate(lo, 0.0, kTwoPi, 1e-10);
    REQUIRE(ps.events.size() == 2);
    const double t_turn = std::acos(-1.0 / 3.0);
    CHECK(ps.events[0].kind == EventKind::turning_point);
    CHECK(std::abs(ps.events[0].t - t_turn) <= 1e-8);
    CHECK(std::abs(ps.events[1].t - (kTwoPi - t_turn)) <= 1e-8);
    CHECK(ps.events[0].xdot == 0.0);
    CHECK(std::abs(ps.events[0].x - 0.339836909454121937) <= 1e-8);
}

TEST_CASE("integrate: line orbit is exact and equilibrium is stationary") {
    const OrbitParams line = make_orbit(0.3, 0.5);
    const TimeSeries ts = integrate(line, 0.0, 5.0, 1e-10);
    const Sample& last = ts.samples.back();
    CHECK(last.t == 5.0);
    CHECK(std::abs(last.x - (0.3 + 2.5)) <= 1e-12);
    CHECK(last.xdot == 0.5);

    const OrbitParams eq = make_orbit(0.0, 0.0);
    const TimeSeries es = integrate(eq, 0.0, 10.0, 1e-10);
    for (const Sample& s : es.samples) {
        CHECK(std::abs(s.x) <= 1e-12);
        CHECK(std::abs(s.xdot) <= 1e-12);
    }
}

TEST_CASE("integrate: sample density supports linear interpolation") {
    const OrbitParams p = make_orbit(0.0, 0.75);
    const double tol_step = 1e-8;
    const TimeSeries ts = integrate(p, 0.0, 10.0, tol_step);
    for (std::size_t i = 1; i < ts.samples.size(); ++i) {
        const Sample& s0 = ts.samples[i - 1];
        const Sample& s1 = ts.samples[i];
        const double tm = 0.5 * (s0.t + s1.t);
        const double xm = 0.5 * (s0.x + s1.x);
        CHECK(std::abs(xm - x_closed(p, tm)) <= 10.0 * tol_step + 1e-12);
    }
}

TEST_CASE("integrate: argument validation") {
    const OrbitParams p = make_orbit(0.0, 0.75);
    CHECK_THROWS_AS(integrate(p, 0.0, 1.0, 1e-2), error);
    CHECK_THROWS_AS(integrate(p, 0.0, 1.0, 1e-14), error);
    CHECK_THROWS_AS(integrate(p, 1.0, 1.0, 1e-10), error);
    CHECK_THROWS_AS(integrate(p, 2.0, 1.0, 1e-10), error);
}

TEST_CASE("fd_equation_residual: magnitude, convergence order, crossing guard") {
    const OrbitParams lo = make_orbit(0.0, 0.25);
    const OrbitParams up = make_orbit(0.0, 0.75);

    CHECK(fd_equation_residual(lo, 1.0, 1e-4) <= 1e-6);
    CHECK(fd_equation_residual(up, 0.5, 1e-4) <= 1e-6);

    // O(h^2): halving h cuts the residual by ~4 across dyadic levels
    for (const OrbitParams* p : {&lo, &up}) {
        const double t = (p == &lo) ? 1.0 : 0.5;
        double prev = fd_equation_residual(*p, t, 8e-4);
        for (double h : {4e-4, 2e-4, 1e-4}) {
            const double cur = fd_equation_residual(*p, t, h);
            const double ratio = prev / cur;
            CHECK(ratio >= 3.5);
            CHECK(ratio <= 4.5);
            prev = cur;
        }
    }

    // residual -> 0 approaching the crossing along t = t0 - 10h; below
    // h ~ 1e-4 the difference quotient of the 0/0 ratio hits rounding noise
    // (growing like 1/h^2), so the sweep stops there
    const double t0 = std::acos(-1.0 / 3.0);
    double first = -1.0, last = -1.0;
    for (int k = 0; k <= 3; ++k) {
        const double h = 1e-3 / std::pow(2.0, k);
        const double r = fd_equation_residual(up, t0 - 10.0 * h, h);
        if (k == 0) first = r;
        else CHECK(r < last);
        last = r;
    }
    CHECK(last <= 1e-8);
    CHECK(last <= first / 50.0);

    // fixed-h approach: the residual stays at the O(h^2) floor up to the
    // crossing, the limit sense of the equation there
    for (double dt : {0.1, 0.02, 0.005, 0.002}) {
        CHECK(fd_equation_residual(up, t0 - dt, 2e-4) <= 1e-8);
    }

    // stencil too close to a crossing is rejected
    CHECK_THROWS_AS(fd_equation_residual(up, t0 - 2e-4, 1e-4), error);
    try {
        fd_equation_residual(up, t0 - 2e-4, 1e-4);
    } catch (const error& e) {
        CHECK(e.code() == errc::too_close_to_crossing);
    }
    CHECK_THROWS_AS(fd_equation_residual(up, 1.0, 1e-2), error);
}

TEST_CASE("mean_xdot_quadrature") {
    CHECK(std::abs(mean_xdot_quadrature(make_orbit(0.0, 0.25)) - 0.0) <= tol::mean_velocity);
    CHECK(std::abs(mean_xdot_quadrature(make_orbit(0.0, 0.75)) - 1.0) <= tol::mean_velocity);
    CHECK(std::abs(mean_xdot_quadrature(make_orbit(0.4, -0.4)) - 0.0) <= tol::mean_velocity);

    std::mt19937 rng(20260810);
    std::uniform_real_distribution<double> da(-1.2, 1.2), db(-2.0, 2.5);
    int done = 0;
    while (done < 50) {
        const double a = da(rng), b = db(rng);
        if (std::abs(b - 0.5) < 1e-2 || std::abs(b - 1.0) < 1e-2) continue;
        const OrbitParams p = make_orbit(a, b);
        const double target = (b < 0.5) ? 0.0 : 1.0;
        CHECK(std::abs(mean_xdot_quadrature(p) - target) <= tol::mean_velocity);
        ++done;
    }

    CHECK_THROWS_AS(mean_xdot_quadrature(make_orbit(0.3, 0.5)), error);
}

TEST_CASE("linearize: centers for the main equation, saddles for the companion") {
    for (std::int64_t n : {0, 3, -2}) {
        const EquilibriumReport main_rep = linearize(n, Equation::main);
        CHECK(main_rep.classification == EquilibriumClass::center);
        CHECK(main_rep.point_x == doctest::Approx(static_cast<double>(n) * kPi));
        CHECK(std::abs(main_rep.eigenvalues[0] - std::complex<double>(0.0, 1.0)) <=
              tol::eigenvalue);
        CHECK(std::abs(main_rep.eigenvalues[1] - std::complex<double>(0.0, -1.0)) <=
              tol::eigenvalue);

        const EquilibriumReport comp_rep = linearize(n, Equation::companion);
        CHECK(comp_rep.classification == EquilibriumClass::saddle);
        CHECK(std::abs(comp_rep.eigenvalues[0] - std::complex<double>(1.0, 0.0)) <=
              tol::eigenvalue);
        CHECK(std::abs(comp_rep.eigenvalues[1] - std::complex<double>(-1.0, 0.0)) <=
              tol::eigenvalue);
    }
}
