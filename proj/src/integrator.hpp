#pragma once

// Embedded Dormand-Prince 5(4) pair with PI step control, 4th-order dense
// output, event location by bisection on the interpolant, and sample
// emission dense enough for linear interpolation at 10x the step tolerance.
// Internal to the library.

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "singorb/constants.hpp"
#include "singorb/errors.hpp"
#include "singorb/numeric.hpp"

namespace singorb::detail {

using Vec2 = std::array<double, 2>;

struct EventProbe {
    EventKind kind;
    std::function<double(const Vec2&)> value;  // sign change marks an event
};

struct DriveHooks {
    // state -> (x, xdot, residual) sample at time t
    std::function<Sample(double, const Vec2&)> to_sample;
    // event state -> snapped sample (exact crossing/turning values)
    std::function<Sample(double, EventKind, const Vec2&)> event_sample;
    std::vector<EventProbe> probes;
};

inline Vec2 dense_eval(const Vec2& r1, const Vec2& r2, const Vec2& r3,
                       const Vec2& r4, const Vec2& r5, double theta) {
    const double th1 = 1.0 - theta;
    Vec2 y;
    for (int i = 0; i < 2; ++i)
        y[i] = r1[i] + theta * (r2[i] + th1 * (r3[i] + theta * (r4[i] + th1 * r5[i])));
    return y;
}

template <class Field>
void drive(Field&& f, Vec2 y, double t0, double t1, double tol,
           const DriveHooks& hooks, TimeSeries& out) {
    // Dormand-Prince coefficients
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                     a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                     d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                     d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    constexpr double safe = 0.9, beta = 0.04;
    constexpr double expo1 = 0.25 - beta * 0.75;  // error-per-unit-step control
    constexpr double fac_min = 0.2, fac_max = 10.0;
    constexpr double h_max = 0.1;

    double t = t0;
    double h = std::min(h_max, std::min(1e-3, t1 - t0));
    double facold = 1e-4;
    double last_emitted = -HUGE_VAL;

    auto emit = [&](const Sample& s) {
        if (s.t <= last_emitted) return;
        out.samples.push_back(s);
        last_emitted = s.t;
    };

    emit(hooks.to_sample(t0, y));
    Vec2 k1 = f(y);

    auto axpy = [](const Vec2& y0, double hh, std::initializer_list<std::pair<double, const Vec2*>> terms) {
        Vec2 r = y0;
        for (auto& [w, k] : terms)
            for (int i = 0; i < 2; ++i) r[i] += hh * w * (*k)[i];
        return r;
    };

    while (t < t1) {
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            fail(errc::step_failure,
                 "step size underflow at t = " + std::to_string(t));
        bool last = false;
        if (t + h >= t1) {
            h = t1 - t;
            last = true;
        }

        const Vec2 k2 = f(axpy(y, h, {{a21, &k1}}));
        const Vec2 k3 = f(axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        const Vec2 k4 = f(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const Vec2 k5 = f(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const Vec2 k6 = f(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const Vec2 y1 = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        const Vec2 k7 = f(y1);
        (void)c2; (void)c3; (void)c4; (void)c5;

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc = tol * std::max(1.0, std::max(std::abs(y[i]), std::abs(y1[i])));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(0.5 * err) / h;  // per unit step, normalized to 1

        const double fac11 = std::pow(std::max(err, 1e-32), expo1);
        if (err > 1.0) {
            h /= std::min(1.0 / fac_min, fac11 / safe);
            continue;
        }

        // accepted: dense-output coefficients
        Vec2 r1 = y, r2, r3, r4, r5;
        for (int i = 0; i < 2; ++i) {
            const double dy = y1[i] - y[i];
            const double bspl = h * k1[i] - dy;
            r2[i] = dy;
            r3[i] = bspl;
            r4[i] = dy - h * k7[i] - bspl;
            r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                         d7 * k7[i]);
        }
        auto at = [&](double theta) { return dense_eval(r1, r2, r3, r4, r5, theta); };

        // locate events by sign change over 8 subintervals, then bisection
        std::vector<std::pair<double, EventKind>> step_events;
        for (const auto& probe : hooks.probes) {
            constexpr int kScan = 8;
            double ga = probe.value(y);
            for (int i = 1; i <= kScan; ++i) {
                const double thb = static_cast<double>(i) / kScan;
                const double gb = probe.value(i == kScan ? y1 : at(thb));
                if (ga == 0.0) { ga = gb; continue; }  // event sits on a node; caught next pass
                if ((ga < 0.0) != (gb < 0.0)) {
                    double lo = static_cast<double>(i - 1) / kScan, hi = thb;
                    double glo = ga;
                    for (int it = 0; it < 80 && (hi - lo) * h > tol::event_time; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        const double gm = probe.value(at(mid));
                        if (gm == 0.0) { lo = hi = mid; break; }
                        if ((glo < 0.0) == (gm < 0.0)) { lo = mid; glo = gm; } else { hi = mid; }
                    }
                    step_events.emplace_back(t + 0.5 * (lo + hi) * h, probe.kind);
                }
                ga = gb;
            }
        }

        // sample density from the second-derivative scale of the step;
        // 40 instead of the exact 80 covers the roughness of the estimate
        double m2 = 1e-3;
        for (int i = 0; i < 2; ++i) m2 = std::max(m2, std::abs(k7[i] - k1[i]) / h);
        const double h_samp = std::sqrt(40.0 * tol / m2);
        const int m = static_cast<int>(std::min(100000.0, std::max(1.0, std::ceil(h / h_samp))));

        std::size_t next_event = 0;
        std::sort(step_events.begin(), step_events.end());
        for (int j = 1; j <= m; ++j) {
            const double tj = (j == m) ? t + h : t + h * static_cast<double>(j) / m;
            while (next_event < step_events.size() && step_events[next_event].first <= tj) {
                const auto& [te, kind] = step_events[next_event++];
                const Vec2 ye = at((te - t) / h);
                const Sample s = hooks.event_sample(te, kind, ye);
                out.events.push_back(Event{s.t, s.x, s.xdot, kind});
                emit(s);
            }
            emit(hooks.to_sample(tj, (j == m) ? y1 : at(static_cast<double>(j) / m)));
        }

        t = (last ? t1 : t + h);
        y = y1;
        k1 = k7;  // first-same-as-last
        const double fac = std::clamp(fac11 / std::pow(facold, beta) / safe,
                                      1.0 / fac_max, 1.0 / fac_min);
        facold = std::max(err, 1e-4);
        h = std::min(h / fac, h_max);
    }
}

} // namespace singorb::detail
