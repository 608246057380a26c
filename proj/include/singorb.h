/* singorb - orbits of the singular oscillator d/dt(cos x/(1-x')) = -sin x
 *
 * C API of the shared library. Objects are opaque handles created and
 * destroyed here; every fallible call returns sg_status and writes its
 * result through out-parameters. sg_last_error_message() describes the
 * most recent failure on the calling thread.
 */

#ifndef SINGORB_H
#define SINGORB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SINGORB_API __declspec(dllexport)
#else
#define SINGORB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
    SG_OK = 0,
    SG_ERR_SINGULAR_POSITION,
    SG_ERR_FORBIDDEN_VELOCITY,
    SG_ERR_SINGULAR_VELOCITY,
    SG_ERR_NOT_APPLICABLE,
    SG_ERR_INVALID_LEVEL,
    SG_ERR_INVALID_RATIO,
    SG_ERR_OUT_OF_RANGE,
    SG_ERR_STEP_FAILURE,
    SG_ERR_EMPTY_CURVE,
    SG_ERR_TOO_CLOSE_TO_CROSSING,
    SG_ERR_INVALID_ARGUMENT,
    SG_ERR_IO,
    SG_ERR_INTERNAL
} sg_status;

SINGORB_API const char* sg_status_name(sg_status status);
SINGORB_API const char* sg_last_error_message(void);

/* ------------------------------------------------------------------ */
/* orbits of the main equation                                          */

typedef struct sg_orbit sg_orbit;

typedef enum sg_orbit_class {
    SG_CLASS_EQUILIBRIUM = 0,
    SG_CLASS_LINE = 1,
    SG_CLASS_PERIODIC = 2,
    SG_CLASS_UNBOUNDED = 3
} sg_orbit_class;

typedef struct sg_orbit_info {
    double a;                /* normalized position, |a| < pi/2 */
    double b;                /* initial velocity */
    int64_t shift_n;         /* pi-translations applied by normalization */
    double A, B, c, R, phi;  /* derived constants */
    int branch;              /* +1 (b > 1/2), -1 (b < 1/2), 0 otherwise */
    sg_orbit_class klass;
    int64_t equilibrium_index;
} sg_orbit_info;

/* Initial data (a_raw, b); a_raw is normalized into (-pi/2, pi/2) by an
 * integer multiple of pi. Rejects b = 1 and positions with cos a = 0. */
SINGORB_API sg_status sg_orbit_create(double a_raw, double b, sg_orbit** out);
/* One-parameter family a = 0, b = xi/(xi+1); xi outside {0, +1, -1}. */
SINGORB_API sg_status sg_orbit_from_ratio(double xi, sg_orbit** out);
SINGORB_API void sg_orbit_destroy(sg_orbit* orbit);
SINGORB_API sg_status sg_orbit_info_get(const sg_orbit* orbit, sg_orbit_info* out);

/* closed-form evaluation at time t (periodic/unbounded orbits) */
SINGORB_API sg_status sg_orbit_x(const sg_orbit* orbit, double t, double* out);
SINGORB_API sg_status sg_orbit_xdot(const sg_orbit* orbit, double t, double* out);
SINGORB_API sg_status sg_orbit_psi(const sg_orbit* orbit, double t, double* out);
/* tan x as a rational expression; *at_infinity = 1 marks the projective
 * point at infinity (x on an odd multiple of pi/2) */
SINGORB_API sg_status sg_orbit_tan_x(const sg_orbit* orbit, double t, double* out,
                                     int* at_infinity);

/* position/velocity for every class (line and equilibrium included);
 * sg_orbit_x_raw adds back the normalization shift */
SINGORB_API sg_status sg_orbit_position(const sg_orbit* orbit, double t, double* out);
SINGORB_API sg_status sg_orbit_velocity(const sg_orbit* orbit, double t, double* out);
SINGORB_API sg_status sg_orbit_x_raw(const sg_orbit* orbit, double t, double* out);

/* interface-crossing times t_j, j in [j_min, j_max]; out must hold
 * j_max - j_min + 1 values; t_0 is the smallest positive root */
SINGORB_API sg_status sg_orbit_crossings(const sg_orbit* orbit, int64_t j_min, int64_t j_max,
                                         double* out);

typedef struct sg_period_info {
    double velocity_period;
    double mean_velocity;    /* 0, 1, or 0.5 */
    int position_periodic;
} sg_period_info;
SINGORB_API sg_status sg_orbit_period_info(const sg_orbit* orbit, sg_period_info* out);

/* ------------------------------------------------------------------ */
/* energy level geometry                                                */

SINGORB_API sg_status sg_energy_value(double x, double v, double* out);
SINGORB_API double sg_energy_residual(double x, double v, double c);
/* writes 0, 1 or 2 admissible velocities at position x on level c */
SINGORB_API sg_status sg_xdot_branches(double x, double c, double out[2], int* count);

typedef struct sg_energy_level {
    double c;
    int has_alpha;    /* 1 iff c in (-1, 0) */
    double alpha;     /* amplitude, when present */
    double xdot_lo;
    double xdot_hi;
} sg_energy_level;
SINGORB_API sg_status sg_level_bounds(double c, sg_energy_level* out);

/* ------------------------------------------------------------------ */
/* numerics: fields, integration, checks                                */

SINGORB_API sg_status sg_rhs(double x, double v, double* out);
/* shell-regularized acceleration on a c > 0 level (the branch through
 * states with sign((1-v) cos x) = +1, i.e. every b < 1 orbit) */
SINGORB_API sg_status sg_rhs_regularized(double x, double v, double c, double* out);

typedef struct sg_series sg_series;

typedef struct sg_sample {
    double t, x, xdot, residual;
} sg_sample;

typedef enum sg_event_kind {
    SG_EVENT_INTERFACE_CROSSING = 0,
    SG_EVENT_TURNING_POINT = 1
} sg_event_kind;

typedef struct sg_event {
    double t, x, xdot;
    sg_event_kind kind;
} sg_event;

/* adaptive integration of the orbit from state (a, b) at t0; tol in
 * [1e-13, 1e-3]; samples are dense enough for linear interpolation at
 * 10*tol and include located events (crossings snapped to exact states) */
SINGORB_API sg_status sg_orbit_integrate(const sg_orbit* orbit, double t0, double t1, double tol,
                                         sg_series** out);
SINGORB_API void sg_series_destroy(sg_series* series);
SINGORB_API size_t sg_series_size(const sg_series* series);
SINGORB_API sg_status sg_series_get(const sg_series* series, size_t index, sg_sample* out);
SINGORB_API size_t sg_series_event_count(const sg_series* series);
SINGORB_API sg_status sg_series_event(const sg_series* series, size_t index, sg_event* out);

/* |d/dt(cos x/(1-x')) + sin x| by central differences along the closed
 * form; h in [1e-7, 1e-3], stencil at least 2h from every crossing */
SINGORB_API sg_status sg_fd_equation_residual(const sg_orbit* orbit, double t, double h,
                                              double* out);
/* quadrature mean of x' over one velocity period: 0 or 1 */
SINGORB_API sg_status sg_mean_xdot(const sg_orbit* orbit, double* out);

typedef struct sg_equilibrium_report {
    int64_t n;
    double point_x;
    double eig_re[2];
    double eig_im[2];
    int classification;  /* 0 center, 1 saddle */
} sg_equilibrium_report;
/* which: 0 = main equation (centers), 1 = companion equation (saddles) */
SINGORB_API sg_status sg_linearize(int64_t n, int which, sg_equilibrium_report* out);

/* ------------------------------------------------------------------ */
/* companion equation d/dt(cos x/(1-x')) = +sin x                       */

/* level constant c = (1-b) e^b / cos a; degenerate = 1 marks c = 0 (b = 1),
 * the invariant line x' = 1 */
SINGORB_API sg_status sg_companion_level(double a, double b, double* c_out, int* degenerate);
/* invert (1-v) e^v = y on one branch: 0 lower (v <= 0), 1 upper (v >= 0) */
SINGORB_API sg_status sg_companion_solve_branch(double y, int branch, double* out);
SINGORB_API sg_status sg_companion_rhs(double x, double v, double* out);

typedef struct sg_curve sg_curve;

typedef struct sg_curve_point {
    double x, v;
    int branch;      /* 0 lower, 1 upper */
    int component;
} sg_curve_point;

/* sample the level curve over the principal period cell where
 * c cos x in (0, 1], points_per_branch points per branch per component */
SINGORB_API sg_status sg_companion_trace(double c, int points_per_branch, sg_curve** out);
SINGORB_API void sg_curve_destroy(sg_curve* curve);
SINGORB_API size_t sg_curve_size(const sg_curve* curve);
SINGORB_API sg_status sg_curve_get(const sg_curve* curve, size_t index, sg_curve_point* out);

/* integrate the companion equation; the sample residual column carries the
 * conserved-level drift (1-v) e^v - c cos x */
SINGORB_API sg_status sg_companion_integrate(double a, double b, double t0, double t1, double tol,
                                             sg_series** out);

/* ------------------------------------------------------------------ */
/* portraits and serialization                                          */

/* closed-form sampling on [t0, t1] with n >= 2 grid points (plus the
 * velocity-extremal and turning times, so sampled extrema are attained) */
SINGORB_API sg_status sg_orbit_sample(const sg_orbit* orbit, double t0, double t1, int n,
                                      sg_series** out);

/* CSV `t,x,xdot,residual`, shortest round-trip decimals, LF line ends */
SINGORB_API sg_status sg_series_write_csv(const sg_series* series, const char* path);
SINGORB_API sg_status sg_series_csv_string(const sg_series* series, char** out);
SINGORB_API void sg_string_free(char* s);

typedef struct sg_portrait sg_portrait;

SINGORB_API sg_status sg_portrait_create(double width_px, double height_px,
                                         double x_min, double x_max,
                                         double v_min, double v_max,
                                         sg_portrait** out);
SINGORB_API void sg_portrait_destroy(sg_portrait* portrait);
SINGORB_API sg_status sg_portrait_set_guides(sg_portrait* portrait, int show_v_half,
                                             int show_v_one, int show_strip_bounds);
SINGORB_API sg_status sg_portrait_add_strip_bound(sg_portrait* portrait, double v);
/* series/curves are copied into the portrait */
SINGORB_API sg_status sg_portrait_add_series(sg_portrait* portrait, const sg_series* series);
SINGORB_API sg_status sg_portrait_add_curve(sg_portrait* portrait, const sg_curve* curve);
/* deterministic standalone SVG; byte-identical for identical input */
SINGORB_API sg_status sg_portrait_svg_string(const sg_portrait* portrait, char** out);
SINGORB_API sg_status sg_portrait_write_svg(const sg_portrait* portrait, const char* path);

/* fully-populated figure presets (1 or 2): canvas, guides, sampled orbits */
SINGORB_API sg_status sg_portrait_preset(int which, sg_portrait** out);
SINGORB_API size_t sg_portrait_series_count(const sg_portrait* portrait);
/* owned copy of the portrait's index-th sampled orbit; destroy it */
SINGORB_API sg_status sg_portrait_series_copy(const sg_portrait* portrait, size_t index,
                                              sg_series** out);

/* ------------------------------------------------------------------ */
/* verification battery                                                 */

typedef struct sg_check {
    char name[48];
    double value;
    double threshold;
    int pass;
} sg_check;

/* run the invariant battery on one orbit; writes up to cap checks and the
 * actual count; tol_scale multiplies every threshold */
SINGORB_API sg_status sg_orbit_verify(const sg_orbit* orbit, double tol_scale, sg_check* out,
                                      int cap, int* count);

#ifdef __cplusplus
}
#endif

#endif /* SINGORB_H */
