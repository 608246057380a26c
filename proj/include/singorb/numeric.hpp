#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "singorb/closed_form.hpp"

namespace singorb {

enum class SeriesSource { closed_form, integrator };

enum class EventKind {
    interface_crossing,  // v through 1, x on an odd multiple of pi/2
    turning_point,       // v through 0
};

struct Event {
    double t = 0.0;
    double x = 0.0;
    double xdot = 0.0;
    EventKind kind = EventKind::interface_crossing;
};

struct Sample {
    double t = 0.0;
    double x = 0.0;
    double xdot = 0.0;
    double residual = 0.0;
};

struct TimeSeries {
    std::vector<Sample> samples;
    SeriesSource source = SeriesSource::closed_form;
    double step_tolerance = 0.0;      // 0 for closed-form sampling
    std::vector<Event> events;
};

enum class Equation { main, companion };

enum class EquilibriumClass { center, saddle };

struct EquilibriumReport {
    std::int64_t n = 0;
    double point_x = 0.0;                       // n*pi
    std::array<std::complex<double>, 2> eigenvalues{};
    EquilibriumClass classification = EquilibriumClass::center;
};

/// Right-hand side of the second-order form: xddot = tan x (1-v)(2v-1).
double rhs(double x, double v);

/// Shell-regularized right-hand side for c > 0 levels: outside
/// |cos x| < 1e-3 equals rhs; inside returns
/// sign(sin x) sqrt((2v-1)/c) (2v-1), the on-level limit for states with
/// sign((1-v) cos x) = +1 (every b < 1 orbit). Finite at crossings with
/// limiting value +-1/sqrt(c).
double rhs_regularized(double x, double v, double c);

/// Branch-aware variant: branch_sign = sign(1-b) of the orbit through the
/// state (-1 for b > 1 orbits, whose limiting value flips sign).
double rhs_regularized(double x, double v, double c, int branch_sign);

/// Adaptive embedded RK integration of the orbit through (a, b) at t0,
/// with event detection (v through 1 for unbounded, v through 0 for
/// periodic) and output dense enough that linear interpolation between
/// samples stays within 10*tol. tol in [1e-13, 1e-3].
TimeSeries integrate(const OrbitParams& p, double t0, double t1, double tol);

/// Central-difference residual |d/dt F + sin x| of the defining equation,
/// F = cos x / (1 - xdot), along the closed form. h in [1e-7, 1e-3]; the
/// stencil must stay 2h away from every crossing time.
double fd_equation_residual(const OrbitParams& p, double t, double h);

/// (1/2pi) * integral of xdot_closed over one velocity period, by
/// periodic-trapezoid refinement to ~1e-12. Equals 0 (b < 1/2) or 1 (b > 1/2).
double mean_xdot_quadrature(const OrbitParams& p);

/// Classify the equilibrium (n*pi, 0) of the chosen equation from the
/// finite-difference Jacobian of its phase-plane field.
EquilibriumReport linearize(std::int64_t n, Equation which);

} // namespace singorb
