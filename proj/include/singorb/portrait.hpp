#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "singorb/companion.hpp"
#include "singorb/numeric.hpp"

namespace singorb {

struct Canvas {
    double width_px = 720.0;
    double height_px = 540.0;
    double x_min = -1.0;
    double x_max = 1.0;
    double v_min = -1.0;
    double v_max = 1.0;
};

struct Guides {
    bool v_half = false;          // dashed line at xdot = 1/2
    bool v_one = false;           // dashed line at xdot = 1 (interface)
    bool strip_bounds = false;    // dashed lines at the listed levels
    std::vector<double> strip_values;
};

struct PortraitSpec {
    double t0 = 0.0;
    double t1 = 6.283185307179586;
    int samples_per_orbit = 1000;
    Canvas canvas;
    Guides guides;
    bool allow_clip = true;
};

/// Evaluate the closed form on a uniform t-grid (line orbits use the exact
/// line formulas). The grid additionally contains the velocity-extremal
/// times (B cos t - A sin t = +-R) and, for periodic orbits, the turning
/// times, so sampled extrema equal the level bounds. Equilibria are not
/// curves; use sample_equilibrium.
TimeSeries sample_orbit(const OrbitParams& p, const PortraitSpec& spec);

/// Single-point series for an equilibrium orbit.
TimeSeries sample_equilibrium(const OrbitParams& p);

/// CSV with header `t,x,xdot,residual`; every value is the shortest decimal
/// string that round-trips the 64-bit value; LF line ends.
void emit_csv(const TimeSeries& series, std::ostream& sink);

/// Inverse of emit_csv, bit-exact.
TimeSeries parse_csv(std::istream& source);

/// Standalone deterministic SVG (svg/line/polyline/text elements only):
/// one polyline per orbit, one per level-curve branch run, dashed guides,
/// labeled axes with x horizontal and y = xdot vertical.
void emit_svg(const PortraitSpec& spec,
              std::span<const TimeSeries> orbits,
              std::span<const LevelCurve> curves,
              std::ostream& sink);

struct FigurePreset {
    PortraitSpec spec;
    std::vector<OrbitParams> orbits;
};

/// Hard-coded parameter sets: figure 1 is a=0, b in {1/4, -2/5};
/// figure 2 is a=0, b in {3/4, 3/2}.
FigurePreset figure_preset(int which);

std::string format_shortest(double value);

} // namespace singorb
