#include "singorb/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "integrator.hpp"
#include "singorb/companion.hpp"
#include "singorb/constants.hpp"
#include "singorb/energy.hpp"

namespace singorb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double snap_odd_half_pi(double x) {
    const double k = std::round(x / kPi - 0.5);
    return (k + 0.5) * kPi;
}

} // namespace

double rhs(double x, double v) {
    if (std::abs(std::cos(x)) < tol::singular_cos)
        fail(errc::singular_position, "rhs: cos x = 0");
    return std::tan(x) * (1.0 - v) * (2.0 * v - 1.0);
}

double rhs_regularized(double x, double v, double c) {
    return rhs_regularized(x, v, c, +1);
}

double rhs_regularized(double x, double v, double c, int branch_sign) {
    if (!(c > 0.0))
        fail(errc::invalid_level, "rhs_regularized: needs a c > 0 level");
    if (branch_sign != 1 && branch_sign != -1)
        fail(errc::invalid_argument, "rhs_regularized: branch_sign must be +-1");
    if (std::abs(std::cos(x)) >= tol::regularization_shell) return rhs(x, v);
    const double s = (std::sin(x) >= 0.0) ? 1.0 : -1.0;
    const double w = 2.0 * v - 1.0;
    return branch_sign * s * std::sqrt(std::max(w, 0.0) / c) * w;
}

TimeSeries integrate(const OrbitParams& p, double t0, double t1, double tol) {
    if (!(tol >= 1e-13 && tol <= 1e-3))
        fail(errc::invalid_argument, "integrate: tol must lie in [1e-13, 1e-3]");
    if (!(t0 < t1)) fail(errc::invalid_argument, "integrate: needs t0 < t1");

    TimeSeries out;
    out.source = SeriesSource::integrator;
    out.step_tolerance = tol;

    const double a = p.init.a;
    const double b = p.init.b;
    const double c = p.c;

    if (p.kind == OrbitKind::unbounded) {
        // Integrate the defining equation's own regular variables
        // (x, F = cos x/(1-xdot)): x' = 1 - cos x/F, F' = -sin x.
        // |F| = sqrt(c/(2xdot-1)) stays away from 0, so crossings of the
        // interface line are ordinary points of this system.
        auto field = [](const detail::Vec2& y) {
            return detail::Vec2{1.0 - std::cos(y[0]) / y[1], -std::sin(y[0])};
        };
        detail::DriveHooks hooks;
        hooks.to_sample = [c](double t, const detail::Vec2& y) {
            const double v = 1.0 - std::cos(y[0]) / y[1];
            return Sample{t, y[0], v, energy_residual(y[0], v, c)};
        };
        hooks.event_sample = [c](double t, EventKind, const detail::Vec2& y) {
            const double xs = snap_odd_half_pi(y[0]);
            return Sample{t, xs, 1.0, energy_residual(xs, 1.0, c)};
        };
        hooks.probes.push_back(detail::EventProbe{
            EventKind::interface_crossing,
            [](const detail::Vec2& y) { return std::cos(y[0]); }});
        detail::drive(field, detail::Vec2{a, std::cos(a) / (1.0 - b)}, t0, t1, tol, hooks, out);
        return out;
    }

    // periodic, line, equilibrium: the raw field never meets cos x = 0
    auto field = [](const detail::Vec2& y) {
        return detail::Vec2{y[1], std::tan(y[0]) * (1.0 - y[1]) * (2.0 * y[1] - 1.0)};
    };
    detail::DriveHooks hooks;
    hooks.to_sample = [c](double t, const detail::Vec2& y) {
        return Sample{t, y[0], y[1], energy_residual(y[0], y[1], c)};
    };
    hooks.event_sample = [c](double t, EventKind, const detail::Vec2& y) {
        return Sample{t, y[0], 0.0, energy_residual(y[0], 0.0, c)};
    };
    if (p.kind == OrbitKind::periodic) {
        hooks.probes.push_back(detail::EventProbe{
            EventKind::turning_point,
            [](const detail::Vec2& y) { return y[1]; }});
    }
    detail::drive(field, detail::Vec2{a, b}, t0, t1, tol, hooks, out);
    return out;
}

double fd_equation_residual(const OrbitParams& p, double t, double h) {
    if (!(h >= 1e-7 && h <= 1e-3))
        fail(errc::invalid_argument, "fd_equation_residual: h must lie in [1e-7, 1e-3]");
    if (p.kind == OrbitKind::unbounded) {
        const double d = std::min(nearest_crossing_distance(p, t - h),
                                  nearest_crossing_distance(p, t + h));
        if (d < 2.0 * h)
            fail(errc::too_close_to_crossing,
                 "fd_equation_residual: stencil within 2h of a crossing time");
    }
    auto F = [&](double s) { return std::cos(position(p, s)) / (1.0 - velocity(p, s)); };
    return std::abs((F(t + h) - F(t - h)) / (2.0 * h) + std::sin(position(p, t)));
}

double mean_xdot_quadrature(const OrbitParams& p) {
    if (p.kind != OrbitKind::periodic && p.kind != OrbitKind::unbounded)
        fail(errc::not_applicable, "mean_xdot_quadrature: needs a 2pi-periodic velocity");
    // periodic trapezoid rule; geometric convergence for this analytic integrand
    double prev = HUGE_VAL;
    for (int n = 64; n <= (1 << 20); n *= 2) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += xdot_closed(p, kTwoPi * i / n);
        const double mean = sum / n;
        if (std::abs(mean - prev) <= 1e-12) return mean;
        prev = mean;
    }
    return prev;
}

EquilibriumReport linearize(std::int64_t n, Equation which) {
    const double x0 = static_cast<double>(n) * kPi;
    auto accel = [which](double x, double v) {
        return which == Equation::main ? rhs(x, v) : companion_rhs(x, v);
    };

    const double d = 1e-6;
    // phase-plane field (x', v') = (v, accel); central-difference Jacobian
    const double j11 = 0.0;
    const double j12 = ((0.0 + d) - (0.0 - d)) / (2.0 * d);
    const double j21 = (accel(x0 + d, 0.0) - accel(x0 - d, 0.0)) / (2.0 * d);
    const double j22 = (accel(x0, d) - accel(x0, -d)) / (2.0 * d);

    const double tr = j11 + j22;
    const double det = j11 * j22 - j12 * j21;
    const double disc = tr * tr - 4.0 * det;

    EquilibriumReport rep;
    rep.n = n;
    rep.point_x = x0;
    if (disc < 0.0) {
        const double im = 0.5 * std::sqrt(-disc);
        rep.eigenvalues = {std::complex<double>(0.5 * tr, im),
                           std::complex<double>(0.5 * tr, -im)};
        if (std::abs(tr) > 2.0 * tol::eigenvalue)
            fail(errc::invalid_argument, "linearize: non-center focus encountered");
        rep.classification = EquilibriumClass::center;
    } else {
        const double rt = std::sqrt(disc);
        const double l1 = 0.5 * (tr + rt);
        const double l2 = 0.5 * (tr - rt);
        rep.eigenvalues = {std::complex<double>(l1, 0.0), std::complex<double>(l2, 0.0)};
        if (!(l1 * l2 < 0.0))
            fail(errc::invalid_argument, "linearize: real eigenvalues do not straddle 0");
        rep.classification = EquilibriumClass::saddle;
    }
    return rep;
}

} // namespace singorb
