#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "singorb/closed_form.hpp"
#include "singorb/constants.hpp"

using namespace singorb;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// admissible random pairs, kept away from b = 1/2 and b = 1
struct AdmissibleGen {
    std::mt19937 rng{20260810};
    std::uniform_real_distribution<double> da{-1.45, 1.45};
    std::uniform_real_distribution<double> db{-2.0, 2.5};
    std::pair<double, double> operator()() {
        for (;;) {
            const double a = da(rng);
            const double b = db(rng);
            if (std::abs(b - 0.5) < 1e-3 || std::abs(b - 1.0) < 1e-3) continue;
            if (std::abs(a) + std::abs(b) < 1e-6) continue;
            return {a, b};
        }
    }
};

} // namespace

TEST_CASE("normalize_initial reduces by pi translations") {
    const InitialData d1 = normalize_initial(0.25, 0.75);
    CHECK(d1.a == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(d1.b == 0.75);
    CHECK(d1.shift_n == 0);

    const InitialData d2 = normalize_initial(kPi + 0.1, 0.3);
    CHECK(d2.a == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(d2.b == 0.3);
    CHECK(d2.shift_n == 1);

    const InitialData d3 = normalize_initial(-3.0 * kPi + 0.4, -0.2);
    CHECK(d3.a == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(d3.shift_n == -3);

    CHECK(std::abs(normalize_initial(kPi, 0.0).a) == 0.0);
}

TEST_CASE("normalize_initial rejects singular and forbidden data") {
    CHECK_THROWS_WITH_AS(normalize_initial(kPi / 2.0, 0.3), doctest::Contains("singular position"),
                         error);
    CHECK_THROWS_AS(normalize_initial(-kPi / 2.0, 0.3), error);
    CHECK_THROWS_AS(normalize_initial(7.0 * kPi / 2.0, 0.3), error);
    CHECK_THROWS_WITH_AS(normalize_initial(0.2, 1.0), doctest::Contains("b = 1"), error);
    CHECK_THROWS_AS(normalize_initial(std::nan(""), 0.3), error);

    try {
        normalize_initial(kPi / 2.0, 0.3);
    } catch (const error& e) {
        CHECK(e.code() == errc::singular_position);
    }
    try {
        normalize_initial(0.0, 1.0);
    } catch (const error& e) {
        CHECK(e.code() == errc::forbidden_velocity);
    }
}

TEST_CASE("derive_params: constants and classification") {
    const OrbitParams p1 = make_orbit(0.0, 0.75);
    CHECK(p1.A == 0.0);
    CHECK(p1.B == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(p1.c == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(p1.kind == OrbitKind::unbounded);
    CHECK(p1.branch == 1);

    const OrbitParams p2 = make_orbit(0.0, 0.25);
    CHECK(p2.A == 0.0);
    CHECK(p2.B == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p2.c == doctest::Approx(-8.0 / 9.0).epsilon(1e-14));
    CHECK(p2.kind == OrbitKind::periodic);
    CHECK(p2.branch == -1);

    const OrbitParams p3 = make_orbit(0.3, 0.5);
    CHECK(p3.kind == OrbitKind::line);
    CHECK(p3.c == 0.0);

    const OrbitParams p4 = make_orbit(kPi, 0.0);
    CHECK(p4.kind == OrbitKind::equilibrium);
    CHECK(p4.equilibrium_index == 1);
}

TEST_CASE("constants identity A^2+B^2 = 4(1-b)^2(1+c) over random data") {
    AdmissibleGen gen;
    for (int i = 0; i < 1000; ++i) {
        const auto [a, b] = gen();
        const OrbitParams p = make_orbit(a, b);
        const double lhs = p.A * p.A + p.B * p.B;
        const double rhs = 4.0 * (1.0 - b) * (1.0 - b) * (1.0 + p.c);
        CHECK(std::abs(lhs - rhs) <= tol::identity_rel * std::max(1.0, lhs));
        CHECK(p.R > 0.0);
        // sign law: c < 0 iff b < 1/2
        if (b < 0.5) CHECK((p.c > -1.0 && p.c < 0.0));
        if (b > 0.5) CHECK(p.c > 0.0);
    }
}

TEST_CASE("xdot_closed: pinned values") {
    const OrbitParams up = make_orbit(0.0, 0.75);
    CHECK(xdot_closed(up, 0.0) == doctest::Approx(0.75).epsilon(1e-15));
    // at the first crossing the velocity reaches the interface line
    CHECK(xdot_closed(up, std::acos(-1.0 / 3.0)) == doctest::Approx(1.0).epsilon(1e-14));

    const OrbitParams lo = make_orbit(0.0, 0.25);
    CHECK(xdot_closed(lo, kPi) == doctest::Approx(-0.5).epsilon(1e-14));

    // denominator is a sum of squares: positive on a dense grid
    AdmissibleGen gen;
    for (int i = 0; i < 50; ++i) {
        const auto [a, b] = gen();
        const OrbitParams p = make_orbit(a, b);
        if (p.kind != OrbitKind::periodic && p.kind != OrbitKind::unbounded) continue;
        for (int j = 0; j <= 200; ++j) {
            const double t = -2.0 * kTwoPi + 4.0 * kTwoPi * j / 200.0;
            const double n1 = p.A * std::cos(t) + p.B * std::sin(t);
            const double n2 = 2.0 * (1.0 - b) + p.B * std::cos(t) - p.A * std::sin(t);
            CHECK(n1 * n1 + n2 * n2 > 0.0);
            // sign barrier: sign(xdot - 1/2) = sign(b - 1/2)
            CHECK((xdot_closed(p, t) - 0.5) * (b - 0.5) > 0.0);
        }
    }
}

TEST_CASE("psi: special values and extension") {
    const OrbitParams p = make_orbit(0.0, 0.75);
    CHECK(psi(p, kPi) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
    CHECK(psi(p, -kPi) == doctest::Approx(-kPi / 2.0).epsilon(1e-15));
    CHECK(psi(p, 3.0 * kPi) == doctest::Approx(3.0 * kPi / 2.0).epsilon(1e-15));
    CHECK(psi(p, 1.0) == doctest::Approx(std::atan(std::tan(0.5) / 2.0)).epsilon(1e-14));
    CHECK(psi(p, 0.0) == 0.0);

    // strictly increasing, and continuous at the extension junctions
    AdmissibleGen gen;
    for (int i = 0; i < 30; ++i) {
        const auto [a, b] = gen();
        const OrbitParams q = make_orbit(a, b);
        if (q.kind != OrbitKind::periodic && q.kind != OrbitKind::unbounded) continue;
        double prev = psi(q, -3.0 * kPi - 0.05);
        for (int j = 1; j <= 1500; ++j) {
            const double t = -3.0 * kPi - 0.05 + (6.0 * kPi + 0.1) * j / 1500.0;
            const double cur = psi(q, t);
            CHECK(cur > prev);
            prev = cur;
        }
        for (double junction : {-3.0 * kPi, -kPi, kPi, 3.0 * kPi}) {
            const double left = psi(q, junction - 1e-9);
            const double right = psi(q, junction + 1e-9);
            const double slope = std::abs(xdot_closed(q, junction) - 0.5);
            CHECK(std::abs(right - left) <= 2e-9 * std::max(1.0, slope) + 1e-12);
        }
    }
}

TEST_CASE("x_closed: pinned values") {
    const OrbitParams lo = make_orbit(0.0, 0.25);
    CHECK(x_closed(lo, 0.0) == 0.0);
    CHECK(std::abs(x_closed(lo, kTwoPi)) <= tol::periodicity);
    // amplitude at the turning time equals acos(sqrt(-c))
    const double t0 = std::acos(-1.0 / 3.0);
    CHECK(x_closed(lo, t0) == doctest::Approx(std::acos(2.0 * std::sqrt(2.0) / 3.0)).epsilon(1e-13));
    CHECK(x_closed(lo, t0) == doctest::Approx(0.339836909454121937).epsilon(1e-14));

    const OrbitParams up = make_orbit(0.0, 0.75);
    CHECK(x_closed(up, 0.0) == 0.0);
    CHECK(x_closed(up, t0) == doctest::Approx(kPi / 2.0).epsilon(1e-13));
}

TEST_CASE("x_closed periodicity dichotomy") {
    AdmissibleGen gen;
    for (int i = 0; i < 60; ++i) {
        const auto [a, b] = gen();
        const OrbitParams p = make_orbit(a, b);
        if (p.kind != OrbitKind::periodic && p.kind != OrbitKind::unbounded) continue;
        const double shift = (b < 0.5) ? 0.0 : kTwoPi;
        for (double t : {-5.0, -1.3, 0.0, 0.7, 2.9, 8.1}) {
            CHECK(std::abs(x_closed(p, t + kTwoPi) - x_closed(p, t) - shift) <= tol::periodicity);
        }
    }
}

TEST_CASE("x_closed derivative matches xdot_closed") {
    // figure parameters plus moderate random draws; very steep orbits have
    // |x'''| h^2/6 above the contract bound and are exercised separately
    std::vector<std::pair<double, double>> cases = {
        {0.0, 0.25}, {0.0, -0.4}, {0.0, 0.75}, {0.0, 1.5}};
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> da(-0.8, 0.8), db(-1.4, 1.6);
    while (cases.size() < 40) {
        const double a = da(rng), b = db(rng);
        if (std::abs(b - 0.5) < 0.1 || std::abs(b - 1.0) < 0.1) continue;
        cases.emplace_back(a, b);
    }
    for (const auto& [a, b] : cases) {
        const OrbitParams p = make_orbit(a, b);
        const double h = 1e-5;
        for (double t : {-4.0, -0.9, 0.33, 1.7, 5.2, 11.0}) {
            if (p.kind == OrbitKind::unbounded && nearest_crossing_distance(p, t) < 1e-3) continue;
            const double fd = (x_closed(p, t + h) - x_closed(p, t - h)) / (2.0 * h);
            CHECK(std::abs(fd - xdot_closed(p, t)) <= tol::derivative_consistency);
        }
    }
    // steep orbits: second-order convergence still holds
    for (const auto& [a, b] : {std::pair{1.4, 2.4}, {-1.3, -1.9}}) {
        const OrbitParams p = make_orbit(a, b);
        for (double t : {0.4, 2.0}) {
            if (p.kind == OrbitKind::unbounded && nearest_crossing_distance(p, t) < 1e-2) continue;
            const double r1 = std::abs((x_closed(p, t + 1e-4) - x_closed(p, t - 1e-4)) / 2e-4 -
                                       xdot_closed(p, t));
            const double r2 = std::abs((x_closed(p, t + 5e-5) - x_closed(p, t - 5e-5)) / 1e-4 -
                                       xdot_closed(p, t));
            CHECK(r2 <= 0.3 * r1 + 1e-10);
        }
    }
    // smoothness through a crossing, looser bound
    const OrbitParams up = make_orbit(0.0, 0.75);
    const double tc = std::acos(-1.0 / 3.0);
    const double h = 1e-5;
    const double fd = (x_closed(up, tc + h) - x_closed(up, tc - h)) / (2.0 * h);
    CHECK(std::abs(fd - xdot_closed(up, tc)) <= 1e-6);
}

TEST_CASE("symmetry about the velocity axis for a = 0, b < 1/2") {
    for (double b : {0.25, -0.4, -1.5, 0.1}) {
        const OrbitParams p = make_orbit(0.0, b);
        for (double t : {0.3, 1.1, 2.7, 5.9}) {
            CHECK(std::abs(x_closed(p, -t) + x_closed(p, t)) <= 1e-10);
            CHECK(std::abs(xdot_closed(p, -t) - xdot_closed(p, t)) <= 1e-10);
        }
    }
}

TEST_CASE("tan_x equals tan(x_closed) away from poles; infinity marker") {
    const OrbitParams q = make_orbit(0.2, 0.3);
    const ProjectiveReal r0 = tan_x(q, 0.0);
    CHECK_FALSE(r0.at_infinity);
    CHECK(r0.value == doctest::Approx(std::tan(0.2)).epsilon(1e-14));

    // periodic case: denominator bounded below by 2(1-b) - R > 0
    const OrbitParams lo = make_orbit(0.0, 0.25);
    const double floor_lo = 2.0 * (1.0 - 0.25) - lo.R;
    CHECK(floor_lo > 0.0);
    for (int j = 0; j <= 500; ++j) {
        const double t = -kTwoPi + 2.0 * kTwoPi * j / 500.0;
        const double den = 2.0 * (1.0 - 0.25) + lo.B * std::cos(t) - lo.A * std::sin(t);
        CHECK(den >= floor_lo - 1e-12);
    }

    AdmissibleGen gen;
    for (int i = 0; i < 40; ++i) {
        const auto [a, b] = gen();
        const OrbitParams p = make_orbit(a, b);
        if (p.kind != OrbitKind::periodic && p.kind != OrbitKind::unbounded) continue;
        for (double t : {-2.1, 0.4, 1.9, 6.3}) {
            const double x = x_closed(p, t);
            if (std::abs(std::cos(x)) <= 1e-6) continue;
            const ProjectiveReal r = tan_x(p, t);
            REQUIRE_FALSE(r.at_infinity);
            CHECK(std::abs(r.value - std::tan(x)) <=
                  tol::tan_consistency_rel * std::max(1.0, std::abs(std::tan(x))));
        }
    }
}

TEST_CASE("crossing_times: roots, ordering, crossing states") {
    const OrbitParams up = make_orbit(0.0, 0.75);
    const auto ts = crossing_times(up, 0, 5);
    REQUIRE(ts.size() == 6);
    CHECK(ts[0] == doctest::Approx(std::acos(-1.0 / 3.0)).epsilon(1e-15));
    CHECK(ts[0] == doctest::Approx(1.91063323624901856).epsilon(1e-14));
    CHECK(ts[1] == doctest::Approx(kTwoPi - std::acos(-1.0 / 3.0)).epsilon(1e-14));
    CHECK(ts[1] == doctest::Approx(4.37255207093056792).epsilon(1e-14));
    for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] > ts[i - 1]);
    CHECK(ts[0] > 0.0);

    const OrbitParams fast = make_orbit(0.0, 1.5);
    CHECK(crossing_times(fast, 0, 0)[0] == doctest::Approx(std::acos(1.0 / 3.0)).epsilon(1e-14));
    CHECK(xdot_closed(fast, crossing_times(fast, 0, 0)[0]) == doctest::Approx(1.0).epsilon(1e-12));

    // negative indices continue the increasing sequence below zero
    const auto back = crossing_times(up, -3, 2);
    REQUIRE(back.size() == 6);
    for (std::size_t i = 1; i < back.size(); ++i) CHECK(back[i] > back[i - 1]);
    CHECK(back[3] == doctest::Approx(ts[0]).epsilon(1e-15));  // j = 0
    CHECK(back[2] <= 0.0);                                    // j = -1 is not positive

    // crossing states land on odd multiples of pi/2 with xdot = 1, also for a != 0
    for (auto [a, b] : {std::pair{0.7, 1.3}, {0.0, 0.75}, {-0.4, 0.9}, {0.2, 2.2}}) {
        const OrbitParams p = make_orbit(a, b);
        for (double t : crossing_times(p, 0, 5)) {
            const double x = x_closed(p, t);
            const double k = std::round(x / kPi - 0.5);
            CHECK(std::abs(x - (k + 0.5) * kPi) <= tol::crossing);
            CHECK(std::abs(xdot_closed(p, t) - 1.0) <= tol::crossing);
        }
    }

    CHECK_THROWS_AS(crossing_times(make_orbit(0.0, 0.25), 0, 1), error);
    try {
        crossing_times(make_orbit(0.0, 0.25), 0, 1);
    } catch (const error& e) {
        CHECK(e.code() == errc::not_applicable);
    }
}

TEST_CASE("period_info") {
    const PeriodInfo lo = period_info(make_orbit(0.0, 0.25));
    CHECK(lo.velocity_period == doctest::Approx(kTwoPi));
    CHECK(lo.mean_velocity == 0.0);
    CHECK(lo.position_periodic);

    const PeriodInfo up = period_info(make_orbit(0.0, 0.75));
    CHECK(up.mean_velocity == 1.0);
    CHECK_FALSE(up.position_periodic);

    const PeriodInfo line = period_info(make_orbit(0.3, 0.5));
    CHECK(line.mean_velocity == 0.5);
    CHECK_FALSE(line.position_periodic);

    CHECK_THROWS_AS(period_info(make_orbit(0.0, 0.0)), error);
}

TEST_CASE("params_from_ratio") {
    const OrbitParams p3 = params_from_ratio(3.0);
    CHECK(p3.init.b == doctest::Approx(0.75).epsilon(1e-16));
    CHECK(p3.A == 0.0);
    CHECK(p3.B == doctest::Approx(1.5).epsilon(1e-15));

    const OrbitParams p13 = params_from_ratio(1.0 / 3.0);
    CHECK(p13.init.b == doctest::Approx(0.25).epsilon(1e-15));

    for (double xi : {1.0, -1.0, 0.0}) CHECK_THROWS_AS(params_from_ratio(xi), error);

    // special-case velocity formula agrees with the general one
    for (double xi : {3.0, 1.0 / 3.0, -0.5, 5.0, -3.0}) {
        const OrbitParams p = params_from_ratio(xi);
        for (int j = 0; j <= 100; ++j) {
            const double t = -kTwoPi + 2.0 * kTwoPi * j / 100.0;
            const double special =
                0.5 * (1.0 + (xi * xi - 1.0) / (xi * xi + 2.0 * xi * std::cos(t) + 1.0));
            CHECK(std::abs(xdot_closed(p, t) - special) <= 1e-12 * std::max(1.0, std::abs(special)));
        }
    }
}

TEST_CASE("pi-translation equivariance") {
    AdmissibleGen gen;
    for (int i = 0; i < 25; ++i) {
        const auto [a, b] = gen();
        const OrbitParams p = make_orbit(a, b);
        const OrbitParams q = make_orbit(a + kPi, b);
        CHECK(q.init.shift_n == p.init.shift_n + 1);
        for (double t : {0.0, 0.9, 3.3, 7.7}) {
            CHECK(std::abs(position_raw(q, t) - (position_raw(p, t) + kPi)) <= 1e-9);
            CHECK(std::abs(velocity(q, t) - velocity(p, t)) <= 1e-10);
        }
    }
}
