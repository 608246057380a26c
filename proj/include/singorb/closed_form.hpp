#pragma once

#include <cstdint>
#include <vector>

#include "singorb/errors.hpp"

namespace singorb {

// Admissible initial pair (a, b), normalized so |a| < pi/2 via the
// x -> x + n*pi translation symmetry of the equation.
struct InitialData {
    double a = 0.0;        // position after normalization, radians
    double b = 0.0;        // initial velocity xdot(0)
    std::int64_t shift_n = 0;  // number of pi-translations applied
};

enum class OrbitKind {
    equilibrium,  // (n*pi, 0)
    line,         // xdot = 1/2, x = a + t/2
    periodic,     // b < 1/2
    unbounded,    // b > 1/2, b != 1
};

// Derived orbit constants.
//   A = sin 2a,  B = 2b - 1 + cos 2a,  c = (2b-1) cos^2 a / (1-b)^2,
//   R = sqrt(A^2 + B^2),  phi with B cos t - A sin t = R cos(t + phi).
// Identity: A^2 + B^2 = 4 (1-b)^2 (1+c).
struct OrbitParams {
    InitialData init;
    double A = 0.0;
    double B = 0.0;
    double c = 0.0;
    double R = 0.0;
    double phi = 0.0;
    int branch = 0;        // +1 for b > 1/2, -1 for b < 1/2, 0 otherwise
    OrbitKind kind = OrbitKind::equilibrium;
    std::int64_t equilibrium_index = 0;  // n of (n*pi, 0), valid for equilibrium
};

// A real value or the point at infinity of the projective line.
struct ProjectiveReal {
    double value = 0.0;
    bool at_infinity = false;
};

struct PeriodInfo {
    double velocity_period = 0.0;
    double mean_velocity = 0.0;   // 0, 1, or 1/2
    bool position_periodic = false;
};

/// Reduce a_raw by an integer multiple of pi so that |a| < pi/2.
/// Throws singular_position when cos(a_raw) vanishes (a on an odd
/// multiple of pi/2) and forbidden_velocity when b = 1.
InitialData normalize_initial(double a_raw, double b);

/// Populate the orbit constants and classify the orbit.
OrbitParams derive_params(const InitialData& init);

/// Convenience: normalize + derive in one step.
OrbitParams make_orbit(double a_raw, double b);

/// One-parameter family a = 0, b = xi/(xi+1); xi must avoid {0, +1, -1}.
OrbitParams params_from_ratio(double xi);

/// Velocity of the explicit solution. Defined for periodic/unbounded orbits.
/// The denominator is a sum of two squares and never vanishes.
double xdot_closed(const OrbitParams& p, double t);

/// Antiderivative of the oscillatory part of xdot_closed, continuous and
/// strictly increasing, with psi(+-pi) = +-pi/2 and
/// psi(t) = n*pi + psi(t - 2n*pi) on [(2n-1)pi, (2n+1)pi].
double psi(const OrbitParams& p, double t);

/// Position of the explicit solution: a + t/2 + branch*(psi(t) - psi(0)).
double x_closed(const OrbitParams& p, double t);

/// tan of the position as a rational expression of cos t, sin t; returns the
/// point at infinity where the denominator vanishes (numerator is then
/// nonzero). Equals tan(x_closed) wherever finite.
ProjectiveReal tan_x(const OrbitParams& p, double t);

/// Interface-crossing times t_j (roots of B cos t - A sin t = 2(b-1)), for
/// j in [j_min, j_max]. t_0 is the smallest positive root and the sequence
/// increases with j. Only unbounded orbits cross; otherwise not_applicable.
std::vector<double> crossing_times(const OrbitParams& p, std::int64_t j_min, std::int64_t j_max);

/// Distance from t to the nearest crossing time (unbounded orbits).
double nearest_crossing_distance(const OrbitParams& p, double t);

/// Velocity period, mean velocity, and position periodicity.
PeriodInfo period_info(const OrbitParams& p);

// Position/velocity for every orbit class (equilibrium and line included).
// x_raw adds back the normalization shift so the trajectory passes through
// the caller's original initial point.
double position(const OrbitParams& p, double t);
double velocity(const OrbitParams& p, double t);
double position_raw(const OrbitParams& p, double t);

} // namespace singorb
