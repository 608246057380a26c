#include "singorb.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "singorb/companion.hpp"
#include "singorb/energy.hpp"
#include "singorb/portrait.hpp"
#include "singorb/verify.hpp"

using namespace singorb;

extern "C" {

struct sg_orbit {
    OrbitParams params;
};
struct sg_series {
    TimeSeries series;
};
struct sg_curve {
    LevelCurve curve;
};
struct sg_portrait {
    PortraitSpec spec;
    std::vector<TimeSeries> orbits;
    std::vector<LevelCurve> curves;
};

} // extern "C"

namespace {

thread_local std::string g_last_error;

sg_status map_errc(errc e) {
    switch (e) {
        case errc::ok:                    return SG_OK;
        case errc::singular_position:     return SG_ERR_SINGULAR_POSITION;
        case errc::forbidden_velocity:    return SG_ERR_FORBIDDEN_VELOCITY;
        case errc::singular_velocity:     return SG_ERR_SINGULAR_VELOCITY;
        case errc::not_applicable:        return SG_ERR_NOT_APPLICABLE;
        case errc::invalid_level:         return SG_ERR_INVALID_LEVEL;
        case errc::invalid_ratio:         return SG_ERR_INVALID_RATIO;
        case errc::out_of_range:          return SG_ERR_OUT_OF_RANGE;
        case errc::step_failure:          return SG_ERR_STEP_FAILURE;
        case errc::empty_curve:           return SG_ERR_EMPTY_CURVE;
        case errc::too_close_to_crossing: return SG_ERR_TOO_CLOSE_TO_CROSSING;
        case errc::invalid_argument:      return SG_ERR_INVALID_ARGUMENT;
        case errc::io_failure:            return SG_ERR_IO;
    }
    return SG_ERR_INTERNAL;
}

// run a callable at the C boundary, translating exceptions to status codes
template <class Fn>
sg_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SG_OK;
    } catch (const error& e) {
        g_last_error = e.what();
        return map_errc(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SG_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SG_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return SG_ERR_INTERNAL;
    }
}

sg_status require(bool ok, const char* message) {
    if (ok) return SG_OK;
    g_last_error = message;
    return SG_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* sg_status_name(sg_status status) {
    switch (status) {
        case SG_OK:                        return "ok";
        case SG_ERR_SINGULAR_POSITION:     return "singular_position";
        case SG_ERR_FORBIDDEN_VELOCITY:    return "forbidden_velocity";
        case SG_ERR_SINGULAR_VELOCITY:     return "singular_velocity";
        case SG_ERR_NOT_APPLICABLE:        return "not_applicable";
        case SG_ERR_INVALID_LEVEL:         return "invalid_level";
        case SG_ERR_INVALID_RATIO:         return "invalid_ratio";
        case SG_ERR_OUT_OF_RANGE:          return "out_of_range";
        case SG_ERR_STEP_FAILURE:          return "step_failure";
        case SG_ERR_EMPTY_CURVE:           return "empty_curve";
        case SG_ERR_TOO_CLOSE_TO_CROSSING: return "too_close_to_crossing";
        case SG_ERR_INVALID_ARGUMENT:      return "invalid_argument";
        case SG_ERR_IO:                    return "io_failure";
        case SG_ERR_INTERNAL:              return "internal";
    }
    return "unknown";
}

const char* sg_last_error_message(void) { return g_last_error.c_str(); }

/* ------------------------------- orbits ------------------------------- */

sg_status sg_orbit_create(double a_raw, double b, sg_orbit** out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] { *out = new sg_orbit{make_orbit(a_raw, b)}; });
}

sg_status sg_orbit_from_ratio(double xi, sg_orbit** out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] { *out = new sg_orbit{params_from_ratio(xi)}; });
}

void sg_orbit_destroy(sg_orbit* orbit) { delete orbit; }

sg_status sg_orbit_info_get(const sg_orbit* orbit, sg_orbit_info* out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    const OrbitParams& p = orbit->params;
    out->a = p.init.a;
    out->b = p.init.b;
    out->shift_n = p.init.shift_n;
    out->A = p.A;
    out->B = p.B;
    out->c = p.c;
    out->R = p.R;
    out->phi = p.phi;
    out->branch = p.branch;
    out->klass = static_cast<sg_orbit_class>(p.kind);
    out->equilibrium_index = p.equilibrium_index;
    return SG_OK;
}

sg_status sg_orbit_x(const sg_orbit* orbit, double t, double* out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    return guarded([&] { *out = x_closed(orbit->params, t); });
}

sg_status sg_orbit_xdot(const sg_orbit* orbit, double t, double* out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    return guarded([&] { *out = xdot_closed(orbit->params, t); });
}

sg_status sg_orbit_psi(const sg_orbit* orbit, double t, double* out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    return guarded([&] { *out = psi(orbit->params, t); });
}

sg_status sg_orbit_tan_x(const sg_orbit* orbit, double t, double* out, int* at_infinity) {
    if (sg_status s = require(orbit && out && at_infinity, "null argument")) return s;
    return guarded([&] {
        const ProjectiveReal r = tan_x(orbit->params, t);
        *out = r.value;
        *at_infinity = r.at_infinity ? 1 : 0;
    });
}

sg_status sg_orbit_position(const sg_orbit* orbit, double t, double* out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    return guarded([&] { *out = position(orbit->params, t); });
}

sg_status sg_orbit_velocity(const sg_orbit* orbit, double t, double* out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    return guarded([&] { *out = velocity(orbit->params, t); });
}

sg_status sg_orbit_x_raw(const sg_orbit* orbit, double t, double* out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    return guarded([&] { *out = position_raw(orbit->params, t); });
}

sg_status sg_orbit_crossings(const sg_orbit* orbit, int64_t j_min, int64_t j_max, double* out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    return guarded([&] {
        const std::vector<double> ts = crossing_times(orbit->params, j_min, j_max);
        std::memcpy(out, ts.data(), ts.size() * sizeof(double));
    });
}

sg_status sg_orbit_period_info(const sg_orbit* orbit, sg_period_info* out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    return guarded([&] {
        const PeriodInfo info = period_info(orbit->params);
        out->velocity_period = info.velocity_period;
        out->mean_velocity = info.mean_velocity;
        out->position_periodic = info.position_periodic ? 1 : 0;
    });
}

/* ------------------------------- energy ------------------------------- */

sg_status sg_energy_value(double x, double v, double* out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] { *out = energy_value(x, v); });
}

double sg_energy_residual(double x, double v, double c) { return energy_residual(x, v, c); }

sg_status sg_xdot_branches(double x, double c, double out[2], int* count) {
    if (sg_status s = require(out && count, "null argument")) return s;
    return guarded([&] {
        const VelocityBranches br = xdot_branches(x, c);
        out[0] = br.v[0];
        out[1] = br.v[1];
        *count = br.count;
    });
}

sg_status sg_level_bounds(double c, sg_energy_level* out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] {
        const EnergyLevel lvl = level_bounds(c);
        out->c = lvl.c;
        out->has_alpha = lvl.alpha.has_value() ? 1 : 0;
        out->alpha = lvl.alpha.value_or(0.0);
        out->xdot_lo = lvl.xdot_lo;
        out->xdot_hi = lvl.xdot_hi;
    });
}

/* ------------------------------ numerics ------------------------------ */

sg_status sg_rhs(double x, double v, double* out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] { *out = rhs(x, v); });
}

sg_status sg_rhs_regularized(double x, double v, double c, double* out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] { *out = rhs_regularized(x, v, c); });
}

sg_status sg_orbit_integrate(const sg_orbit* orbit, double t0, double t1, double tol,
                             sg_series** out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    return guarded([&] { *out = new sg_series{integrate(orbit->params, t0, t1, tol)}; });
}

void sg_series_destroy(sg_series* series) { delete series; }

size_t sg_series_size(const sg_series* series) { return series ? series->series.samples.size() : 0; }

sg_status sg_series_get(const sg_series* series, size_t index, sg_sample* out) {
    if (sg_status s = require(series && out, "null argument")) return s;
    if (sg_status s = require(index < series->series.samples.size(), "sample index out of range"))
        return s;
    const Sample& smp = series->series.samples[index];
    *out = sg_sample{smp.t, smp.x, smp.xdot, smp.residual};
    return SG_OK;
}

size_t sg_series_event_count(const sg_series* series) {
    return series ? series->series.events.size() : 0;
}

sg_status sg_series_event(const sg_series* series, size_t index, sg_event* out) {
    if (sg_status s = require(series && out, "null argument")) return s;
    if (sg_status s = require(index < series->series.events.size(), "event index out of range"))
        return s;
    const Event& ev = series->series.events[index];
    *out = sg_event{ev.t, ev.x, ev.xdot,
                    ev.kind == EventKind::interface_crossing ? SG_EVENT_INTERFACE_CROSSING
                                                             : SG_EVENT_TURNING_POINT};
    return SG_OK;
}

sg_status sg_fd_equation_residual(const sg_orbit* orbit, double t, double h, double* out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    return guarded([&] { *out = fd_equation_residual(orbit->params, t, h); });
}

sg_status sg_mean_xdot(const sg_orbit* orbit, double* out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    return guarded([&] { *out = mean_xdot_quadrature(orbit->params); });
}

sg_status sg_linearize(int64_t n, int which, sg_equilibrium_report* out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    if (sg_status s = require(which == 0 || which == 1, "which must be 0 (main) or 1 (companion)"))
        return s;
    return guarded([&] {
        const EquilibriumReport rep =
            linearize(n, which == 0 ? Equation::main : Equation::companion);
        out->n = rep.n;
        out->point_x = rep.point_x;
        for (int i = 0; i < 2; ++i) {
            out->eig_re[i] = rep.eigenvalues[i].real();
            out->eig_im[i] = rep.eigenvalues[i].imag();
        }
        out->classification = rep.classification == EquilibriumClass::center ? 0 : 1;
    });
}

/* ----------------------------- companion ------------------------------ */

sg_status sg_companion_level(double a, double b, double* c_out, int* degenerate) {
    if (sg_status s = require(c_out && degenerate, "null argument")) return s;
    return guarded([&] {
        const CompanionLevel lvl = companion_level(a, b);
        *c_out = lvl.c;
        *degenerate = lvl.degenerate ? 1 : 0;
    });
}

sg_status sg_companion_solve_branch(double y, int branch, double* out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    if (sg_status s = require(branch == 0 || branch == 1, "branch must be 0 (lower) or 1 (upper)"))
        return s;
    return guarded([&] {
        *out = solve_branch(y, branch == 0 ? CompanionBranch::lower : CompanionBranch::upper);
    });
}

sg_status sg_companion_rhs(double x, double v, double* out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] { *out = companion_rhs(x, v); });
}

sg_status sg_companion_trace(double c, int points_per_branch, sg_curve** out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] {
        const CompanionLevel level{c, c == 0.0};
        *out = new sg_curve{trace_level(level, points_per_branch)};
    });
}

void sg_curve_destroy(sg_curve* curve) { delete curve; }

size_t sg_curve_size(const sg_curve* curve) { return curve ? curve->curve.points.size() : 0; }

sg_status sg_curve_get(const sg_curve* curve, size_t index, sg_curve_point* out) {
    if (sg_status s = require(curve && out, "null argument")) return s;
    if (sg_status s = require(index < curve->curve.points.size(), "point index out of range"))
        return s;
    const CurvePoint& pt = curve->curve.points[index];
    *out = sg_curve_point{pt.x, pt.v, pt.branch == CompanionBranch::lower ? 0 : 1, pt.component};
    return SG_OK;
}

sg_status sg_companion_integrate(double a, double b, double t0, double t1, double tol,
                                 sg_series** out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] { *out = new sg_series{companion_integrate(a, b, t0, t1, tol)}; });
}

/* ------------------------------ portraits ----------------------------- */

sg_status sg_orbit_sample(const sg_orbit* orbit, double t0, double t1, int n, sg_series** out) {
    if (sg_status s = require(orbit && out, "null argument")) return s;
    return guarded([&] {
        if (orbit->params.kind == OrbitKind::equilibrium) {
            *out = new sg_series{sample_equilibrium(orbit->params)};
            return;
        }
        PortraitSpec spec;
        spec.t0 = t0;
        spec.t1 = t1;
        spec.samples_per_orbit = n;
        *out = new sg_series{sample_orbit(orbit->params, spec)};
    });
}

sg_status sg_series_write_csv(const sg_series* series, const char* path) {
    if (sg_status s = require(series && path, "null argument")) return s;
    return guarded([&] {
        std::ofstream file(path, std::ios::binary);
        if (!file) fail(errc::io_failure, std::string("cannot open ") + path);
        emit_csv(series->series, file);
        file.flush();
        if (!file) fail(errc::io_failure, std::string("write failed: ") + path);
    });
}

sg_status sg_series_csv_string(const sg_series* series, char** out) {
    if (sg_status s = require(series && out, "null argument")) return s;
    return guarded([&] {
        std::ostringstream os;
        emit_csv(series->series, os);
        *out = dup_string(os.str());
    });
}

void sg_string_free(char* s) { delete[] s; }

sg_status sg_portrait_create(double width_px, double height_px, double x_min, double x_max,
                             double v_min, double v_max, sg_portrait** out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] {
        if (!(x_min < x_max && v_min < v_max && width_px > 0 && height_px > 0))
            fail(errc::invalid_argument, "portrait: empty canvas range");
        auto* p = new sg_portrait;
        p->spec.canvas = Canvas{width_px, height_px, x_min, x_max, v_min, v_max};
        *out = p;
    });
}

void sg_portrait_destroy(sg_portrait* portrait) { delete portrait; }

sg_status sg_portrait_set_guides(sg_portrait* portrait, int show_v_half, int show_v_one,
                                 int show_strip_bounds) {
    if (sg_status s = require(portrait != nullptr, "null portrait")) return s;
    portrait->spec.guides.v_half = show_v_half != 0;
    portrait->spec.guides.v_one = show_v_one != 0;
    portrait->spec.guides.strip_bounds = show_strip_bounds != 0;
    return SG_OK;
}

sg_status sg_portrait_add_strip_bound(sg_portrait* portrait, double v) {
    if (sg_status s = require(portrait != nullptr, "null portrait")) return s;
    portrait->spec.guides.strip_values.push_back(v);
    return SG_OK;
}

sg_status sg_portrait_add_series(sg_portrait* portrait, const sg_series* series) {
    if (sg_status s = require(portrait && series, "null argument")) return s;
    return guarded([&] { portrait->orbits.push_back(series->series); });
}

sg_status sg_portrait_add_curve(sg_portrait* portrait, const sg_curve* curve) {
    if (sg_status s = require(portrait && curve, "null argument")) return s;
    return guarded([&] { portrait->curves.push_back(curve->curve); });
}

sg_status sg_portrait_svg_string(const sg_portrait* portrait, char** out) {
    if (sg_status s = require(portrait && out, "null argument")) return s;
    return guarded([&] {
        std::ostringstream os;
        emit_svg(portrait->spec, portrait->orbits, portrait->curves, os);
        *out = dup_string(os.str());
    });
}

sg_status sg_portrait_write_svg(const sg_portrait* portrait, const char* path) {
    if (sg_status s = require(portrait && path, "null argument")) return s;
    return guarded([&] {
        std::ofstream file(path, std::ios::binary);
        if (!file) fail(errc::io_failure, std::string("cannot open ") + path);
        emit_svg(portrait->spec, portrait->orbits, portrait->curves, file);
        file.flush();
        if (!file) fail(errc::io_failure, std::string("write failed: ") + path);
    });
}

sg_status sg_portrait_preset(int which, sg_portrait** out) {
    if (sg_status s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] {
        const FigurePreset preset = figure_preset(which);
        auto* p = new sg_portrait;
        p->spec = preset.spec;
        for (const OrbitParams& orbit : preset.orbits)
            p->orbits.push_back(sample_orbit(orbit, preset.spec));
        *out = p;
    });
}

size_t sg_portrait_series_count(const sg_portrait* portrait) {
    return portrait ? portrait->orbits.size() : 0;
}

sg_status sg_portrait_series_copy(const sg_portrait* portrait, size_t index, sg_series** out) {
    if (sg_status s = require(portrait && out, "null argument")) return s;
    if (sg_status s = require(index < portrait->orbits.size(), "series index out of range"))
        return s;
    return guarded([&] { *out = new sg_series{portrait->orbits[index]}; });
}

/* ---------------------------- verification ---------------------------- */

sg_status sg_orbit_verify(const sg_orbit* orbit, double tol_scale, sg_check* out, int cap,
                          int* count) {
    if (sg_status s = require(orbit && out && count, "null argument")) return s;
    return guarded([&] {
        const std::vector<Check> checks = verify_orbit(orbit->params, tol_scale);
        if (static_cast<int>(checks.size()) > cap)
            fail(errc::invalid_argument, "sg_orbit_verify: result buffer too small");
        for (std::size_t i = 0; i < checks.size(); ++i) {
            std::snprintf(out[i].name, sizeof out[i].name, "%s", checks[i].name.c_str());
            out[i].value = checks[i].value;
            out[i].threshold = checks[i].threshold;
            out[i].pass = checks[i].pass ? 1 : 0;
        }
        *count = static_cast<int>(checks.size());
    });
}

} // extern "C"
