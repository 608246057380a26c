#include "singorb/companion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "integrator.hpp"
#include "singorb/constants.hpp"

namespace singorb {

namespace {

constexpr double kPi = std::numbers::pi;

double f_level(double v) { return (1.0 - v) * std::exp(v); }
double f_level_deriv(double v) { return -v * std::exp(v); }

double companion_level_residual(double x, double v, double c) {
    return f_level(v) - c * std::cos(x);
}

} // namespace

CompanionLevel companion_level(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b))
        fail(errc::invalid_argument, "companion_level: initial data must be finite");
    if (!(std::abs(a) < kPi / 2.0))
        fail(errc::invalid_argument, "companion_level: needs |a| < pi/2");
    if (std::abs(std::cos(a)) < tol::singular_cos)
        fail(errc::singular_position, "companion_level: cos(a) = 0");
    const double c = (1.0 - b) * std::exp(b) / std::cos(a);
    return CompanionLevel{c, b == 1.0};
}

double solve_branch(double y, CompanionBranch branch) {
    if (!std::isfinite(y)) fail(errc::invalid_argument, "solve_branch: y must be finite");

    double lo, hi;  // bracket with f(lo) >= y >= f(hi) ... sign handled below
    if (branch == CompanionBranch::lower) {
        // f increases from 0+ to 1 on (-inf, 0]
        if (!(y > 0.0 && y <= 1.0))
            fail(errc::out_of_range, "solve_branch: lower branch needs y in (0, 1]");
        if (y == 1.0) return 0.0;
        hi = 0.0;
        lo = -1.0;
        while (f_level(lo) > y) {
            lo *= 2.0;
            if (lo < -750.0) break;  // f(lo) underflows to 0 < y
        }
    } else {
        // f decreases from 1 through 0 (at v=1) to -inf on [0, inf)
        if (!(y <= 1.0))
            fail(errc::out_of_range, "solve_branch: upper branch needs y <= 1");
        if (y == 1.0) return 0.0;
        lo = 0.0;
        hi = 1.0;
        while (f_level(hi) > y) hi *= 2.0;
    }

    // bisection to a ~1e-8 interval, then Newton with the bracket as guard
    const bool increasing = branch == CompanionBranch::lower;
    for (int i = 0; i < 64 && hi - lo > 1e-8; ++i) {
        const double mid = 0.5 * (lo + hi);
        const bool above = f_level(mid) > y;
        if (above == increasing) hi = mid; else lo = mid;
    }
    double v = 0.5 * (lo + hi);
    for (int i = 0; i < 8; ++i) {
        const double r = f_level(v) - y;
        if (std::abs(r) <= tol::branch_round_trip) break;
        const double d = f_level_deriv(v);
        if (d == 0.0) break;
        double step = r / d;
        double vn = v - step;
        if (vn < lo || vn > hi) vn = 0.5 * (lo + hi);  // fall back inside the bracket
        v = vn;
    }
    return v;
}

double companion_rhs(double x, double v) {
    if (std::abs(std::cos(x)) < tol::singular_cos)
        fail(errc::singular_position, "companion_rhs: cos x = 0");
    return std::tan(x) * (1.0 - v);
}

LevelCurve trace_level(const CompanionLevel& level, int points_per_branch) {
    if (points_per_branch < 1)
        fail(errc::invalid_argument, "trace_level: needs at least one point per branch");

    LevelCurve curve;
    curve.level = level;

    if (level.degenerate || level.c == 0.0) {
        // the invariant line xdot = 1 over the principal cell
        for (int i = 0; i < points_per_branch; ++i) {
            const double x = -kPi / 2.0 + kPi * (i + 1.0) / (points_per_branch + 1.0);
            curve.points.push_back({x, 1.0, CompanionBranch::upper, 0});
        }
        return curve;
    }
    if (!std::isfinite(level.c)) fail(errc::invalid_argument, "trace_level: level must be finite");

    // Principal period cell where c cos x > 0: centered at 0 for c > 0 and at
    // pi for c < 0. In the offset u = x - center, the domain is c cos x =
    // |c| cos u in (0, 1]: the whole open cell when |c| <= 1, otherwise the
    // two closed-edge components |u| >= acos(1/|c|).
    const double center = (level.c > 0.0) ? 0.0 : kPi;
    const double ac = std::abs(level.c);

    struct Span { double lo, hi; bool lo_closed, hi_closed; };
    std::vector<Span> spans;
    if (ac <= 1.0) {
        spans.push_back({-kPi / 2.0, kPi / 2.0, false, false});
    } else {
        const double uc = std::acos(1.0 / ac);
        spans.push_back({-kPi / 2.0, -uc, false, true});
        spans.push_back({uc, kPi / 2.0, true, false});
    }

    const int n = points_per_branch;
    int component = 0;
    for (const auto& span : spans) {
        for (CompanionBranch branch : {CompanionBranch::lower, CompanionBranch::upper}) {
            for (int i = 0; i < n; ++i) {
                // uniform grid; open edges (where c cos x -> 0) are inset by
                // half a cell, closed edges (c cos x = 1, v = 0) are included
                double frac;
                if (n == 1) {
                    frac = span.lo_closed ? 0.0 : (span.hi_closed ? 1.0 : 0.5);
                } else {
                    frac = static_cast<double>(i) / (n - 1);
                }
                const double inset = 0.5 / std::max(n - 1, 1);
                if (!span.lo_closed && frac == 0.0) frac = inset;
                if (!span.hi_closed && frac == 1.0) frac = 1.0 - inset;
                const double u = span.lo + frac * (span.hi - span.lo);
                const double y = ac * std::cos(u);
                if (!(y > 0.0 && y <= 1.0)) continue;
                curve.points.push_back({center + u, solve_branch(y, branch), branch, component});
            }
        }
        ++component;
    }
    if (curve.points.empty())
        fail(errc::empty_curve, "trace_level: no x satisfies c cos x in (0, 1]");
    return curve;
}

TimeSeries companion_integrate(double a, double b, double t0, double t1, double tol) {
    if (!(tol >= 1e-13 && tol <= 1e-3))
        fail(errc::invalid_argument, "companion_integrate: tol must lie in [1e-13, 1e-3]");
    if (!(t0 < t1)) fail(errc::invalid_argument, "companion_integrate: needs t0 < t1");
    const CompanionLevel level = companion_level(a, b);
    const double c = level.c;

    TimeSeries out;
    out.source = SeriesSource::integrator;
    out.step_tolerance = tol;

    if (level.degenerate) {
        // b = 1: the invariant line xdot = 1, x = a + t
        const int n = std::max(2, static_cast<int>(std::ceil((t1 - t0) / 0.05)));
        for (int i = 0; i < n; ++i) {
            const double t = t0 + (t1 - t0) * i / (n - 1.0);
            const double x = a + (t - t0);
            out.samples.push_back({t, x, 1.0, companion_level_residual(x, 1.0, c)});
        }
        return out;
    }

    // same regular variables as the main equation, with the mirrored flux law:
    // x' = 1 - cos x/F, F' = +sin x; on the level F = e^{xdot}/c != 0
    auto field = [](const detail::Vec2& y) {
        return detail::Vec2{1.0 - std::cos(y[0]) / y[1], std::sin(y[0])};
    };
    detail::DriveHooks hooks;
    hooks.to_sample = [c](double t, const detail::Vec2& y) {
        const double v = 1.0 - std::cos(y[0]) / y[1];
        return Sample{t, y[0], v, companion_level_residual(y[0], v, c)};
    };
    hooks.event_sample = [c](double t, EventKind kind, const detail::Vec2& y) {
        if (kind == EventKind::interface_crossing) {
            const double k = std::round(y[0] / kPi - 0.5);
            const double xs = (k + 0.5) * kPi;
            return Sample{t, xs, 1.0, companion_level_residual(xs, 1.0, c)};
        }
        return Sample{t, y[0], 0.0, companion_level_residual(y[0], 0.0, c)};
    };
    hooks.probes.push_back(detail::EventProbe{
        EventKind::interface_crossing,
        [](const detail::Vec2& y) { return std::cos(y[0]); }});
    hooks.probes.push_back(detail::EventProbe{
        EventKind::turning_point,
        [](const detail::Vec2& y) { return 1.0 - std::cos(y[0]) / y[1]; }});
    detail::drive(field, detail::Vec2{a, std::cos(a) / (1.0 - b)}, t0, t1, tol, hooks, out);
    return out;
}

} // namespace singorb
