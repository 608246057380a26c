#pragma once

// Shared tolerance table. Every tolerance that appears in a library
// contract or a verification check lives here, not inline at call sites.

namespace singorb::tol {

// |A^2+B^2 - 4(1-b)^2(1+c)| <= identity_rel * max(1, A^2+B^2)
inline constexpr double identity_rel = 1e-12;

// crossing states: |x(t_j) - odd*pi/2| and |xdot(t_j) - 1|
inline constexpr double crossing = 1e-9;

// polynomial energy residual along closed-form orbits
inline constexpr double energy_residual = 1e-9;

// x(t+2pi) - x(t) - shift
inline constexpr double periodicity = 1e-10;

// quadrature mean velocity vs {0, 1}
inline constexpr double mean_velocity = 1e-8;

// sup |x_integrated - x_closed| on [0,10] at step tolerance 1e-10
inline constexpr double oracle_sup = 1e-6;

// max |energy residual| along integrated trajectories on [0,20]
inline constexpr double energy_drift = 1e-7;

// central-difference residual of the defining equation at h = 1e-4
inline constexpr double fd_residual = 1e-6;

// conserved-level drift of the companion integrator on [0,10]
inline constexpr double companion_drift = 1e-7;

// |f(solve_branch(y)) - y| for the companion branch solver
inline constexpr double branch_round_trip = 1e-12;

// finite-difference eigenvalues vs {+-i} / {+-1}
inline constexpr double eigenvalue = 1e-6;

// |cos x| below this counts as a singular position
inline constexpr double singular_cos = 1e-12;

// |cos x| switch for the shell-regularized right-hand side
inline constexpr double regularization_shell = 1e-3;

// turning-point radicand 1 + c*sec^2 x: clamp to 0 when within this
inline constexpr double radicand_clamp = 1e-12;

// event location accuracy in t
inline constexpr double event_time = 1e-12;

// psi(t) snaps to +-pi/2 when t is within this of +-pi (mod 2pi)
inline constexpr double psi_pole_snap = 1e-12;

// level-curve points: |(1-v)e^v - c cos x|
inline constexpr double level_point = 1e-10;

// tan(x_closed) vs X_tan, relative, where |cos x| > 1e-6
inline constexpr double tan_consistency_rel = 1e-8;

// finite difference of x_closed vs xdot_closed
inline constexpr double derivative_consistency = 1e-8;

// default integrator step-control tolerance
inline constexpr double default_step = 1e-10;

} // namespace singorb::tol
