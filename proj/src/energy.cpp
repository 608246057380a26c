#include "singorb/energy.hpp"

#include <cmath>

#include "singorb/constants.hpp"

namespace singorb {

double energy_value(double x, double v) {
    if (v == 1.0)
        fail(errc::singular_velocity, "energy_value: quotient form undefined at xdot = 1");
    const double cx = std::cos(x);
    const double w = 1.0 - v;
    return cx * cx * (2.0 * v - 1.0) / (w * w);
}

double energy_residual(double x, double v, double c) {
    const double cx = std::cos(x);
    const double w = 1.0 - v;
    return cx * cx * (2.0 * v - 1.0) - c * w * w;
}

VelocityBranches xdot_branches(double x, double c) {
    const double cx = std::cos(x);
    if (std::abs(cx) < tol::singular_cos)
        fail(errc::singular_position, "xdot_branches: cos x = 0");

    VelocityBranches out;
    if (c == 0.0) {  // the line level
        out.v[0] = 0.5;
        out.count = 1;
        return out;
    }

    double r = 1.0 + c / (cx * cx);
    if (r < 0.0) {
        if (r < -tol::radicand_clamp) return out;  // past the turning point
        r = 0.0;
    }
    const double s = std::sqrt(r);

    if (c > 0.0) {
        // s > 1; the two branches straddle the interface line
        out.v[0] = s / (s + 1.0);
        out.v[1] = s / (s - 1.0);
        out.count = 2;
    } else {
        if (s == 0.0) {  // turning point, both signed branches collapse
            out.v[0] = 0.0;
            out.count = 1;
        } else {
            out.v[0] = s / (1.0 + s);
            out.v[1] = -s / (1.0 - s);
            out.count = 2;
        }
    }
    return out;
}

EnergyLevel level_bounds(double c) {
    if (!std::isfinite(c)) fail(errc::invalid_argument, "level_bounds: c must be finite");
    if (c <= -1.0)
        fail(errc::invalid_level, "level_bounds: c <= -1 lies below the equilibrium level");
    if (c == 0.0)
        fail(errc::invalid_level, "level_bounds: c = 0 is the line orbit, not a generic level");

    EnergyLevel lvl;
    lvl.c = c;
    const double s = std::sqrt(1.0 + c);
    if (c < 0.0) {
        lvl.alpha = std::acos(std::sqrt(-c));
        lvl.xdot_lo = -s / (1.0 - s);
        lvl.xdot_hi = s / (1.0 + s);
    } else {
        lvl.xdot_lo = s / (s + 1.0);
        lvl.xdot_hi = s / (s - 1.0);
    }
    return lvl;
}

} // namespace singorb
