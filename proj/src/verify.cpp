#include "singorb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "singorb/constants.hpp"
#include "singorb/energy.hpp"
#include "singorb/numeric.hpp"

namespace singorb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Check make_check(std::string name, double value, double threshold) {
    return Check{std::move(name), value, threshold, value <= threshold};
}

double periodicity_shift(const OrbitParams& p) {
    switch (p.kind) {
        case OrbitKind::periodic: return 0.0;
        case OrbitKind::unbounded: return kTwoPi;
        case OrbitKind::line: return kPi;
        default: return 0.0;
    }
}

} // namespace

std::vector<Check> verify_orbit(const OrbitParams& p, double tol_scale) {
    if (!(tol_scale > 0.0)) fail(errc::invalid_argument, "verify_orbit: tol_scale must be > 0");
    std::vector<Check> checks;

    // constants identity A^2 + B^2 = 4 (1-b)^2 (1+c), relative
    {
        const double lhs = p.A * p.A + p.B * p.B;
        const double rhs_v = 4.0 * (1.0 - p.init.b) * (1.0 - p.init.b) * (1.0 + p.c);
        const double dev = std::abs(lhs - rhs_v) / std::max(1.0, lhs);
        checks.push_back(make_check("constants identity", dev, tol::identity_rel * tol_scale));
    }

    if (p.kind == OrbitKind::equilibrium) {
        // stationary point: the integrator must hold it
        const TimeSeries ts = integrate(p, 0.0, 10.0, tol::default_step);
        double dev = 0.0;
        for (const Sample& s : ts.samples)
            dev = std::max(dev, std::max(std::abs(s.x - p.init.a), std::abs(s.xdot)));
        checks.push_back(make_check("integrator agreement", dev, tol::oracle_sup * tol_scale));
        return checks;
    }

    // closed-form energy residual over [0, 4pi]
    {
        double worst = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const double t = 2.0 * kTwoPi * i / 1999.0;
            worst = std::max(worst, std::abs(energy_residual(position(p, t), velocity(p, t), p.c)));
        }
        checks.push_back(make_check("energy residual (closed form)", worst,
                                    tol::energy_residual * tol_scale));
    }

    // x(t + 2pi) - x(t) - shift on a grid
    {
        const double shift = periodicity_shift(p);
        double worst = 0.0;
        for (int i = 0; i < 64; ++i) {
            const double t = -kTwoPi + 2.0 * kTwoPi * i / 63.0;
            worst = std::max(worst, std::abs(position(p, t + kTwoPi) - position(p, t) - shift));
        }
        checks.push_back(make_check("periodicity", worst, tol::periodicity * tol_scale));
    }

    // mean velocity: quadrature for curves, exact for the line orbit
    {
        const double target = period_info(p).mean_velocity;
        const double mean = (p.kind == OrbitKind::line) ? 0.5 : mean_xdot_quadrature(p);
        checks.push_back(make_check("mean velocity", std::abs(mean - target),
                                    tol::mean_velocity * tol_scale));
    }

    // independent integration vs closed form, sup over [0, 10]
    const TimeSeries ts = integrate(p, 0.0, 10.0, tol::default_step);
    {
        double worst = 0.0;
        for (const Sample& s : ts.samples)
            worst = std::max(worst, std::abs(s.x - position(p, s.t)));
        checks.push_back(make_check("integrator agreement", worst, tol::oracle_sup * tol_scale));
    }

    // energy residual along the integrated trajectory, [0, 20]
    {
        const TimeSeries drift = integrate(p, 0.0, 20.0, tol::default_step);
        double worst = 0.0;
        for (const Sample& s : drift.samples) worst = std::max(worst, std::abs(s.residual));
        checks.push_back(make_check("energy drift (integrated)", worst,
                                    tol::energy_drift * tol_scale));
    }

    // central-difference residual of the defining equation
    {
        constexpr double h = 1e-4;
        double worst = 0.0;
        for (int i = 0; i < 24; ++i) {
            const double t = 0.3 + 9.0 * i / 23.0;
            if (p.kind == OrbitKind::unbounded && nearest_crossing_distance(p, t) < 4.0 * h)
                continue;
            worst = std::max(worst, fd_equation_residual(p, t, h));
        }
        checks.push_back(make_check("equation residual (fd)", worst, tol::fd_residual * tol_scale));
    }

    if (p.kind == OrbitKind::unbounded) {
        const std::vector<double> tj = crossing_times(p, 0, 5);
        double worst = 0.0;
        for (double t : tj) {
            const double x = x_closed(p, t);
            const double k = std::round(x / kPi - 0.5);
            worst = std::max(worst, std::abs(x - (k + 0.5) * kPi));
            worst = std::max(worst, std::abs(xdot_closed(p, t) - 1.0));
        }
        checks.push_back(make_check("interface crossings", worst, tol::crossing * tol_scale));
    }

    return checks;
}

bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

} // namespace singorb
