#include "singorb/portrait.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <system_error>

#include "singorb/constants.hpp"
#include "singorb/energy.hpp"

namespace singorb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void append_in_span(std::vector<double>& ts, double t, double t0, double t1) {
    if (t > t0 && t < t1) ts.push_back(t);
}

// times where B cos t - A sin t = +-R (velocity extremes): t = -phi + k*pi
void velocity_extreme_times(const OrbitParams& p, double t0, double t1, std::vector<double>& ts) {
    const double first = std::ceil((t0 + p.phi) / kPi);
    for (double k = first;; k += 1.0) {
        const double t = -p.phi + k * kPi;
        if (t >= t1) break;
        append_in_span(ts, t, t0, t1);
    }
}

// turning times of a periodic orbit (xdot = 0)
void turning_times(const OrbitParams& p, double t0, double t1, std::vector<double>& ts) {
    const double b = p.init.b;
    const double ca = std::cos(p.init.a);
    const double q = (4.0 * (1.0 - 2.0 * b) * ca * ca - (p.A * p.A + p.B * p.B) -
                      4.0 * (1.0 - b) * (1.0 - b)) /
                     (4.0 * (1.0 - b) * p.R);
    if (!(q >= -1.0 && q <= 1.0)) return;
    const double th = std::acos(q);
    const double base = std::floor((t0 + p.phi) / kTwoPi) - 1.0;
    for (double k = base;; k += 1.0) {
        const double lo = -p.phi + 2.0 * kPi * k;
        if (lo - th >= t1) break;
        append_in_span(ts, lo + th, t0, t1);
        append_in_span(ts, lo - th, t0, t1);
        append_in_span(ts, lo + kTwoPi - th, t0, t1);
    }
}

Sample eval_sample(const OrbitParams& p, double t) {
    const double x = position(p, t);
    const double v = velocity(p, t);
    return Sample{t, x, v, energy_residual(x, v, p.c)};
}

struct PixelMapper {
    const Canvas& cv;
    double ml = 52.0, mr = 14.0, mt = 14.0, mb = 40.0;
    double px(double x) const {
        return ml + (x - cv.x_min) / (cv.x_max - cv.x_min) * (cv.width_px - ml - mr);
    }
    double py(double v) const {
        return mt + (cv.v_max - v) / (cv.v_max - cv.v_min) * (cv.height_px - mt - mb);
    }
};

std::string fixed2(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

void svg_line(std::ostream& os, double x1, double y1, double x2, double y2,
              const char* stroke, const char* extra) {
    os << "<line x1=\"" << fixed2(x1) << "\" y1=\"" << fixed2(y1) << "\" x2=\"" << fixed2(x2)
       << "\" y2=\"" << fixed2(y2) << "\" stroke=\"" << stroke << "\"" << extra << "/>\n";
}

void svg_text(std::ostream& os, double x, double y, const char* anchor, const std::string& body) {
    os << "<text x=\"" << fixed2(x) << "\" y=\"" << fixed2(y)
       << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"" << anchor << "\">"
       << body << "</text>\n";
}

const char* orbit_color(std::size_t i) {
    static constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                               "#9467bd", "#8c564b", "#e377c2"};
    return kPalette[i % std::size(kPalette)];
}

} // namespace

std::string format_shortest(double value) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

TimeSeries sample_orbit(const OrbitParams& p, const PortraitSpec& spec) {
    if (p.kind == OrbitKind::equilibrium)
        fail(errc::not_applicable, "sample_orbit: equilibria are points, use sample_equilibrium");
    if (spec.samples_per_orbit < 2)
        fail(errc::invalid_argument, "sample_orbit: needs at least 2 samples");
    if (!(spec.t0 < spec.t1)) fail(errc::invalid_argument, "sample_orbit: needs t0 < t1");

    const int n = spec.samples_per_orbit;
    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(n) + 16);
    for (int i = 0; i < n; ++i)
        ts.push_back(spec.t0 + (spec.t1 - spec.t0) * i / (n - 1.0));

    if (p.kind == OrbitKind::unbounded) velocity_extreme_times(p, spec.t0, spec.t1, ts);
    if (p.kind == OrbitKind::periodic) {
        velocity_extreme_times(p, spec.t0, spec.t1, ts);
        turning_times(p, spec.t0, spec.t1, ts);
    }
    std::sort(ts.begin(), ts.end());

    TimeSeries out;
    out.source = SeriesSource::closed_form;
    double last = -HUGE_VAL;
    for (double t : ts) {
        if (t - last <= 1e-12 * std::max(1.0, std::abs(t))) continue;
        out.samples.push_back(eval_sample(p, t));
        last = t;
    }
    return out;
}

TimeSeries sample_equilibrium(const OrbitParams& p) {
    if (p.kind != OrbitKind::equilibrium)
        fail(errc::not_applicable, "sample_equilibrium: not an equilibrium orbit");
    TimeSeries out;
    out.samples.push_back(eval_sample(p, 0.0));
    return out;
}

void emit_csv(const TimeSeries& series, std::ostream& sink) {
    if (series.samples.empty())
        fail(errc::invalid_argument, "emit_csv: refusing to write an empty series");
    std::string body = "t,x,xdot,residual\n";
    for (const Sample& s : series.samples) {
        body += format_shortest(s.t);
        body += ',';
        body += format_shortest(s.x);
        body += ',';
        body += format_shortest(s.xdot);
        body += ',';
        body += format_shortest(s.residual);
        body += '\n';
    }
    sink.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!sink) fail(errc::io_failure, "emit_csv: sink write failed");
}

TimeSeries parse_csv(std::istream& source) {
    std::string line;
    if (!std::getline(source, line) || line != "t,x,xdot,residual")
        fail(errc::invalid_argument, "parse_csv: bad header");
    TimeSeries out;
    while (std::getline(source, line)) {
        if (line.empty()) continue;
        Sample s;
        double* fields[4] = {&s.t, &s.x, &s.xdot, &s.residual};
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int i = 0; i < 4; ++i) {
            auto res = std::from_chars(p, end, *fields[i]);
            if (res.ec != std::errc{}) fail(errc::invalid_argument, "parse_csv: bad number");
            p = res.ptr;
            if (i < 3) {
                if (p == end || *p != ',') fail(errc::invalid_argument, "parse_csv: bad row");
                ++p;
            }
        }
        if (p != end) fail(errc::invalid_argument, "parse_csv: trailing characters");
        out.samples.push_back(s);
    }
    return out;
}

void emit_svg(const PortraitSpec& spec,
              std::span<const TimeSeries> orbits,
              std::span<const LevelCurve> curves,
              std::ostream& sink) {
    const Canvas& cv = spec.canvas;
    if (!(cv.x_min < cv.x_max && cv.v_min < cv.v_max && cv.width_px > 0 && cv.height_px > 0))
        fail(errc::invalid_argument, "emit_svg: empty canvas range");
    if (!spec.allow_clip) {
        for (const auto& series : orbits)
            for (const Sample& s : series.samples)
                if (s.x < cv.x_min || s.x > cv.x_max || s.xdot < cv.v_min || s.xdot > cv.v_max)
                    fail(errc::invalid_argument, "emit_svg: sample outside canvas ranges");
    }

    const PixelMapper m{cv};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed2(cv.width_px)
       << "\" height=\"" << fixed2(cv.height_px) << "\" viewBox=\"0 0 " << fixed2(cv.width_px)
       << " " << fixed2(cv.height_px) << "\">\n";

    const double x0 = m.px(cv.x_min), x1 = m.px(cv.x_max);
    const double y0 = m.py(cv.v_min), y1 = m.py(cv.v_max);
    svg_line(os, x0, y0, x1, y0, "#000000", " stroke-width=\"1\"");
    svg_line(os, x0, y0, x0, y1, "#000000", " stroke-width=\"1\"");
    svg_line(os, x0, y1, x1, y1, "#000000", " stroke-width=\"1\"");
    svg_line(os, x1, y0, x1, y1, "#000000", " stroke-width=\"1\"");

    constexpr const char* kDashed = " stroke-width=\"1\" stroke-dasharray=\"6 4\"";
    auto guide = [&](double v) {
        if (v >= cv.v_min && v <= cv.v_max) svg_line(os, x0, m.py(v), x1, m.py(v), "#888888", kDashed);
    };
    if (spec.guides.v_half) guide(0.5);
    if (spec.guides.v_one) guide(1.0);
    if (spec.guides.strip_bounds)
        for (double v : spec.guides.strip_values) guide(v);

    std::size_t color = 0;
    for (const auto& series : orbits) {
        os << "<polyline fill=\"none\" stroke=\"" << orbit_color(color++)
           << "\" stroke-width=\"1.3\" points=\"";
        bool first = true;
        for (const Sample& s : series.samples) {
            if (!first) os << ' ';
            os << fixed2(m.px(s.x)) << ',' << fixed2(m.py(s.xdot));
            first = false;
        }
        os << "\"/>\n";
    }
    for (const auto& curve : curves) {
        // one polyline per (component, branch) run
        std::size_t i = 0;
        while (i < curve.points.size()) {
            const auto branch = curve.points[i].branch;
            const int component = curve.points[i].component;
            os << "<polyline fill=\"none\" stroke=\"" << orbit_color(color)
               << "\" stroke-width=\"1.3\" points=\"";
            bool first = true;
            while (i < curve.points.size() && curve.points[i].branch == branch &&
                   curve.points[i].component == component) {
                if (!first) os << ' ';
                os << fixed2(m.px(curve.points[i].x)) << ',' << fixed2(m.py(curve.points[i].v));
                first = false;
                ++i;
            }
            os << "\"/>\n";
        }
        ++color;
    }

    svg_text(os, 0.5 * (x0 + x1), cv.height_px - 8.0, "middle", "x");
    svg_text(os, x0, 11.0, "start", "y = dx/dt");
    svg_text(os, x0, cv.height_px - 22.0, "middle", format_shortest(cv.x_min));
    svg_text(os, x1, cv.height_px - 22.0, "middle", format_shortest(cv.x_max));
    svg_text(os, x0 - 4.0, y0, "end", format_shortest(cv.v_min));
    svg_text(os, x0 - 4.0, y1 + 10.0, "end", format_shortest(cv.v_max));
    os << "</svg>\n";

    const std::string body = os.str();
    sink.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!sink) fail(errc::io_failure, "emit_svg: sink write failed");
}

FigurePreset figure_preset(int which) {
    FigurePreset preset;
    if (which == 1) {
        preset.orbits = {make_orbit(0.0, 0.25), make_orbit(0.0, -0.4)};
        preset.spec.t0 = 0.0;
        preset.spec.t1 = kTwoPi;
        preset.spec.samples_per_orbit = 1001;
        preset.spec.canvas = Canvas{720.0, 540.0, -0.6, 0.6, -0.8, 0.6};
        preset.spec.guides.v_half = true;
    } else if (which == 2) {
        preset.orbits = {make_orbit(0.0, 0.75), make_orbit(0.0, 1.5)};
        preset.spec.t0 = 0.0;
        preset.spec.t1 = 2.0 * kTwoPi;
        preset.spec.samples_per_orbit = 1001;
        preset.spec.canvas = Canvas{720.0, 540.0, -0.5, 13.0, 0.55, 1.7};
        preset.spec.guides.v_half = true;
        preset.spec.guides.v_one = true;
        preset.spec.guides.strip_bounds = true;
        for (const auto& p : preset.orbits) {
            const EnergyLevel lvl = level_bounds(p.c);
            for (double v : {lvl.xdot_lo, lvl.xdot_hi}) {
                auto& vals = preset.spec.guides.strip_values;
                const bool seen = std::any_of(vals.begin(), vals.end(),
                                              [&](double w) { return std::abs(w - v) < 1e-12; });
                if (!seen) vals.push_back(v);
            }
        }
        std::sort(preset.spec.guides.strip_values.begin(), preset.spec.guides.strip_values.end());
    } else {
        fail(errc::invalid_argument, "figure_preset: which must be 1 or 2");
    }
    return preset;
}

} // namespace singorb
