#pragma once

#include <array>
#include <optional>

#include "singorb/errors.hpp"

namespace singorb {

// Geometry of one energy level cos^2 x (2 xdot - 1)/(1 - xdot)^2 = c.
// For c in (-1,0) the orbit is trapped in |x| <= alpha, alpha = acos(sqrt(-c)).
// For c > 0 the velocity stays in a strip whose bounds have harmonic mean 1.
struct EnergyLevel {
    double c = 0.0;
    std::optional<double> alpha;  // present iff c in (-1, 0)
    double xdot_lo = 0.0;
    double xdot_hi = 0.0;
};

// 0, 1 or 2 admissible velocities at position x on level c.
struct VelocityBranches {
    std::array<double, 2> v{0.0, 0.0};
    int count = 0;
};

/// Quotient energy cos^2 x (2v-1)/(1-v)^2; singular_velocity at v = 1.
double energy_value(double x, double v);

/// Polynomial residual cos^2 x (2v-1) - c (1-v)^2. Defined everywhere,
/// including the crossing states (odd*pi/2, 1), where both terms vanish.
double energy_residual(double x, double v, double c);

/// Solve the level equation for xdot at position x.
/// c in (-1,0): the two signed branches where 1 + c sec^2 x >= 0, empty past
/// the turning points. c > 0: the sub- and super-interface branches.
VelocityBranches xdot_branches(double x, double c);

/// Amplitude and velocity bounds of level c. invalid_level for c <= -1
/// (below the equilibrium level) and c = 0 (the line orbit).
EnergyLevel level_bounds(double c);

} // namespace singorb
