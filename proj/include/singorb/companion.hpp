#pragma once

#include <vector>

#include "singorb/numeric.hpp"

namespace singorb {

// Level set of the companion energy (1 - xdot) e^{xdot} = c cos x.
// c = (1-b) e^b / cos a from the initial data; c = 0 (b = 1) is the
// degenerate level, the invariant line xdot = 1.
struct CompanionLevel {
    double c = 0.0;
    bool degenerate = false;
};

enum class CompanionBranch { lower, upper };  // v <= 0 / v >= 0

struct CurvePoint {
    double x = 0.0;
    double v = 0.0;
    CompanionBranch branch = CompanionBranch::lower;
    int component = 0;
};

struct LevelCurve {
    CompanionLevel level;
    std::vector<CurvePoint> points;
};

/// Level constant through (a, b); requires |a| < pi/2.
CompanionLevel companion_level(double a, double b);

/// Invert f(v) = (1-v) e^v on one monotone branch: lower (v <= 0,
/// y in (0,1]) or upper (v >= 0, y <= 1). Bracketing bisection plus Newton,
/// |f(v) - y| <= 1e-12.
double solve_branch(double y, CompanionBranch branch);

/// Companion field: xddot = tan x (1 - xdot).
double companion_rhs(double x, double v);

/// Sample the level curve over the principal period cell where
/// c cos x in (0, 1], n points per branch per connected component.
/// Components are closed at joints where c cos x = 1 (v = 0 there).
/// The degenerate level traces the line v = 1.
LevelCurve trace_level(const CompanionLevel& level, int points_per_branch);

/// Adaptive integration of the companion equation from (a, b) at t0; the
/// residual column records the conserved-level drift (1-v) e^v - c cos x.
TimeSeries companion_integrate(double a, double b, double t0, double t1, double tol);

} // namespace singorb
