#include "singorb/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "singorb/constants.hpp"

namespace singorb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_curve(const OrbitParams& p, const char* op) {
    if (p.kind != OrbitKind::periodic && p.kind != OrbitKind::unbounded)
        fail(errc::not_applicable, std::string(op) + ": defined for periodic and unbounded orbits only");
}

double cos2a(const OrbitParams& p) {
    const double ca = std::cos(p.init.a);
    return ca * ca;
}

// wrap into (0, 2*pi]
double wrap_positive(double t) {
    double u = std::fmod(t, kTwoPi);
    if (u <= 0.0) u += kTwoPi;
    return u;
}

} // namespace

InitialData normalize_initial(double a_raw, double b) {
    if (!std::isfinite(a_raw) || !std::isfinite(b))
        fail(errc::invalid_argument, "initial data must be finite");
    if (b == 1.0)
        fail(errc::forbidden_velocity,
             "forbidden velocity b = 1: the coefficient of the second derivative is unbounded");
    if (std::abs(std::cos(a_raw)) < tol::singular_cos)
        fail(errc::singular_position,
             "singular position: cos(a) = 0, a must avoid odd multiples of pi/2");

    const double n = std::round(a_raw / kPi);
    // single-rounding reduction keeps exact multiples of pi at exactly 0
    const double a = std::fma(-n, kPi, a_raw);
    if (!(std::abs(a) < kPi / 2.0))
        fail(errc::singular_position,
             "singular position: cos(a) = 0, a must avoid odd multiples of pi/2");
    return InitialData{a, b, static_cast<std::int64_t>(n)};
}

OrbitParams derive_params(const InitialData& init) {
    const double a = init.a;
    const double b = init.b;
    if (b == 1.0)
        fail(errc::forbidden_velocity,
             "forbidden velocity b = 1: the coefficient of the second derivative is unbounded");

    OrbitParams p;
    p.init = init;
    p.A = std::sin(2.0 * a);
    p.B = 2.0 * b - 1.0 + std::cos(2.0 * a);
    const double ca = std::cos(a);
    p.c = (2.0 * b - 1.0) * ca * ca / ((1.0 - b) * (1.0 - b));
    p.R = std::hypot(p.A, p.B);
    p.phi = std::atan2(p.A, p.B);

    if (a == 0.0 && b == 0.0) {
        p.kind = OrbitKind::equilibrium;
        p.equilibrium_index = init.shift_n;
        p.branch = 0;
    } else if (b == 0.5) {
        p.kind = OrbitKind::line;
        p.branch = 0;
    } else if (b < 0.5) {
        p.kind = OrbitKind::periodic;
        p.branch = -1;
    } else {
        p.kind = OrbitKind::unbounded;
        p.branch = +1;
    }
    return p;
}

OrbitParams make_orbit(double a_raw, double b) {
    return derive_params(normalize_initial(a_raw, b));
}

OrbitParams params_from_ratio(double xi) {
    if (!std::isfinite(xi)) fail(errc::invalid_argument, "xi must be finite");
    if (xi == 0.0 || xi == 1.0 || xi == -1.0)
        fail(errc::invalid_ratio, "xi must avoid {0, +1, -1}");
    return make_orbit(0.0, xi / (xi + 1.0));
}

double xdot_closed(const OrbitParams& p, double t) {
    require_curve(p, "xdot_closed");
    const double b = p.init.b;
    const double n1 = p.A * std::cos(t) + p.B * std::sin(t);
    const double n2 = 2.0 * (1.0 - b) + p.B * std::cos(t) - p.A * std::sin(t);
    // sum of two squares; they cannot vanish together for admissible data
    const double den = n1 * n1 + n2 * n2;
    return 0.5 + 2.0 * (2.0 * b - 1.0) * cos2a(p) / den;
}

double psi(const OrbitParams& p, double t) {
    require_curve(p, "psi");
    const double b = p.init.b;

    const double n = std::floor((t + kPi) / kTwoPi);
    const double tr = t - kTwoPi * n;  // in [-pi, pi)

    double base;
    if (std::abs(tr - kPi) <= tol::psi_pole_snap) {
        base = kPi / 2.0;
    } else if (std::abs(tr + kPi) <= tol::psi_pole_snap) {
        base = -kPi / 2.0;
    } else {
        const double Bm = p.B - 2.0 * (1.0 - b);
        const double P = p.A * p.A + Bm * Bm;
        const double Q = 4.0 * (1.0 - b) * p.A;
        const double M = 4.0 * std::abs(2.0 * b - 1.0) * cos2a(p);
        const double th = tr / 2.0;
        // arctan((P tan th - Q)/M) written with atan2 so the tan pole at
        // th = +-pi/2 needs no special case
        base = std::atan2(P * std::sin(th) - Q * std::cos(th), M * std::cos(th));
    }
    return n * kPi + base;
}

double x_closed(const OrbitParams& p, double t) {
    require_curve(p, "x_closed");
    const double sgn = (p.init.b > 0.5) ? 1.0 : -1.0;
    return p.init.a + t / 2.0 + sgn * (psi(p, t) - psi(p, 0.0));
}

ProjectiveReal tan_x(const OrbitParams& p, double t) {
    require_curve(p, "tan_x");
    const double b = p.init.b;
    const double num = p.A * std::cos(t) + p.B * std::sin(t);
    const double den = 2.0 * (1.0 - b) + p.B * std::cos(t) - p.A * std::sin(t);
    if (den == 0.0) return ProjectiveReal{num > 0 ? HUGE_VAL : -HUGE_VAL, true};
    return ProjectiveReal{num / den, false};
}

std::vector<double> crossing_times(const OrbitParams& p, std::int64_t j_min, std::int64_t j_max) {
    if (p.kind != OrbitKind::unbounded)
        fail(errc::not_applicable,
             "crossing_times: only unbounded orbits (b > 1/2) meet the interface line");
    if (j_min > j_max) fail(errc::invalid_argument, "crossing_times: j_min > j_max");

    const double b = p.init.b;
    const double q = 2.0 * (b - 1.0) / p.R;  // |q| < 1 for unbounded orbits
    const double theta = std::acos(q);

    // two root families t = -phi +- theta (mod 2*pi); t_0 and t_1 are the
    // first two positive representatives
    double s0 = wrap_positive(-p.phi + theta);
    double s1 = wrap_positive(-p.phi - theta);
    if (s0 > s1) std::swap(s0, s1);

    auto polish = [&](double t) {
        // one Newton step on g(t) = B cos t - A sin t - 2(b-1)
        const double g = p.B * std::cos(t) - p.A * std::sin(t) - 2.0 * (b - 1.0);
        const double gp = -p.B * std::sin(t) - p.A * std::cos(t);
        if (gp != 0.0) t -= g / gp;
        return t;
    };

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(j_max - j_min + 1));
    for (std::int64_t j = j_min; j <= j_max; ++j) {
        const std::int64_t k = (j >= 0) ? j / 2 : (j - 1) / 2;  // floor(j/2)
        const double base = ((j - 2 * k) == 0) ? s0 : s1;
        out.push_back(polish(base + kTwoPi * static_cast<double>(k)));
    }
    return out;
}

double nearest_crossing_distance(const OrbitParams& p, double t) {
    const double q = 2.0 * (p.init.b - 1.0) / p.R;
    const double theta = std::acos(q);
    const double u = wrap_positive(t + p.phi);  // crossings at u = +-theta (mod 2*pi)
    double d = HUGE_VAL;
    for (double root : {theta, kTwoPi - theta, theta + kTwoPi, -theta}) {
        d = std::min(d, std::abs(u - root));
    }
    return d;
}

PeriodInfo period_info(const OrbitParams& p) {
    switch (p.kind) {
        case OrbitKind::periodic:  return PeriodInfo{kTwoPi, 0.0, true};
        case OrbitKind::unbounded: return PeriodInfo{kTwoPi, 1.0, false};
        case OrbitKind::line:      return PeriodInfo{kTwoPi, 0.5, false};
        case OrbitKind::equilibrium:
            fail(errc::not_applicable, "period_info: equilibrium orbits are stationary");
    }
    fail(errc::invalid_argument, "period_info: unknown orbit class");
}

double position(const OrbitParams& p, double t) {
    switch (p.kind) {
        case OrbitKind::equilibrium: return p.init.a;
        case OrbitKind::line:        return p.init.a + t / 2.0;
        default:                     return x_closed(p, t);
    }
}

double velocity(const OrbitParams& p, double t) {
    switch (p.kind) {
        case OrbitKind::equilibrium: return 0.0;
        case OrbitKind::line:        return 0.5;
        default:                     return xdot_closed(p, t);
    }
}

double position_raw(const OrbitParams& p, double t) {
    return position(p, t) + static_cast<double>(p.init.shift_n) * kPi;
}

const char* errc_name(errc e) {
    switch (e) {
        case errc::ok:                    return "ok";
        case errc::singular_position:     return "singular_position";
        case errc::forbidden_velocity:    return "forbidden_velocity";
        case errc::singular_velocity:     return "singular_velocity";
        case errc::not_applicable:        return "not_applicable";
        case errc::invalid_level:         return "invalid_level";
        case errc::invalid_ratio:         return "invalid_ratio";
        case errc::out_of_range:          return "out_of_range";
        case errc::step_failure:          return "step_failure";
        case errc::empty_curve:           return "empty_curve";
        case errc::too_close_to_crossing: return "too_close_to_crossing";
        case errc::invalid_argument:      return "invalid_argument";
        case errc::io_failure:            return "io_failure";
    }
    return "unknown";
}

} // namespace singorb
