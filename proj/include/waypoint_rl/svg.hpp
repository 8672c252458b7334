#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "waypoint_rl/errors.hpp"
#include "waypoint_rl/vec2.hpp"

namespace waypoint_rl {

// Self-contained SVG charts. Output is a pure function of the data: fixed
// canvas, fixed precision, no timestamps, LF endings.

namespace svg_detail {

inline constexpr double kWidth = 800.0;
inline constexpr double kHeight = 500.0;
inline constexpr double kLeft = 70.0;
inline constexpr double kRight = 25.0;
inline constexpr double kTop = 45.0;
inline constexpr double kBottom = 55.0;

inline std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string fmtg(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

inline std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

inline double nice_step(double range, int target) {
    const double raw = range / std::max(1, target);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double factor = 10.0;
    if (norm < 1.5) factor = 1.0;
    else if (norm < 3.5) factor = 2.0;
    else if (norm < 7.5) factor = 5.0;
    return factor * mag;
}

inline std::vector<double> ticks(double lo, double hi, int target = 5) {
    if (!(hi > lo)) return {lo};
    const double step = nice_step(hi - lo, target);
    std::vector<double> out;
    double t = std::ceil(lo / step) * step;
    for (; t <= hi + step * 1e-9; t += step) {
        if (std::abs(t) < step * 1e-9) t = 0.0;  // avoid "-0"
        out.push_back(t);
    }
    return out;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

inline Range padded(double lo, double hi) {
    if (lo == hi) return {lo - 1.0, hi + 1.0};
    const double pad = (hi - lo) * 0.05;
    return {lo - pad, hi + pad};
}

inline void open_svg(std::string& out, const std::string& title) {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmtg(kWidth) + "\" height=\"" +
           fmtg(kHeight) + "\" viewBox=\"0 0 " + fmtg(kWidth) + " " + fmtg(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt2(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" + escape(title) + "</text>\n";
}

inline void draw_axes(std::string& out, const Range& xr, const Range& yr,
                      const std::string& x_label, const std::string& y_label) {
    const double x0 = kLeft, x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom, y1 = kTop;
    auto px = [&](double x) { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); };
    auto py = [&](double y) { return y0 - (y - yr.lo) / (yr.hi - yr.lo) * (y0 - y1); };

    out += "<rect x=\"" + fmt2(x0) + "\" y=\"" + fmt2(y1) + "\" width=\"" + fmt2(x1 - x0) +
           "\" height=\"" + fmt2(y0 - y1) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ticks(xr.lo, xr.hi)) {
        out += "<line x1=\"" + fmt2(px(t)) + "\" y1=\"" + fmt2(y0) + "\" x2=\"" + fmt2(px(t)) +
               "\" y2=\"" + fmt2(y0 + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fmt2(px(t)) + "\" y=\"" + fmt2(y0 + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + fmtg(t) +
               "</text>\n";
    }
    for (double t : ticks(yr.lo, yr.hi)) {
        out += "<line x1=\"" + fmt2(x0 - 5) + "\" y1=\"" + fmt2(py(t)) + "\" x2=\"" + fmt2(x0) +
               "\" y2=\"" + fmt2(py(t)) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fmt2(x0 - 8) + "\" y=\"" + fmt2(py(t) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmtg(t) +
               "</text>\n";
    }
    out += "<text x=\"" + fmt2((x0 + x1) / 2) + "\" y=\"" + fmt2(kHeight - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           escape(x_label) + "</text>\n";
    out += "<text x=\"18\" y=\"" + fmt2((y0 + y1) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " + fmt2((y0 + y1) / 2) + ")\">" + escape(y_label) +
           "</text>\n";
}

}  // namespace svg_detail

struct PlotSeries {
    std::vector<double> x;
    std::vector<double> y;
};

inline std::string svg_line_chart(const PlotSeries& series, const std::string& title,
                                  const std::string& x_label, const std::string& y_label) {
    using namespace svg_detail;
    if (series.x.empty() || series.x.size() != series.y.size())
        throw ValidationError("plot: empty or mismatched data series");

    const auto [xmin, xmax] = std::minmax_element(series.x.begin(), series.x.end());
    const auto [ymin, ymax] = std::minmax_element(series.y.begin(), series.y.end());
    const Range xr = padded(*xmin, *xmax);
    const Range yr = padded(*ymin, *ymax);

    const double x0 = kLeft, x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom, y1 = kTop;
    auto px = [&](double x) { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); };
    auto py = [&](double y) { return y0 - (y - yr.lo) / (yr.hi - yr.lo) * (y0 - y1); };

    std::string out;
    open_svg(out, title);
    draw_axes(out, xr, yr, x_label, y_label);
    out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series.x.size(); ++i) {
        if (i) out.push_back(' ');
        out += fmt2(px(series.x[i])) + "," + fmt2(py(series.y[i]));
    }
    out += "\"/>\n</svg>\n";
    return out;
}

// Equal-aspect 2-D view of a flown path; waypoints drawn as open circles,
// start marked green and end marked red.
inline std::string svg_path_chart(const std::vector<Vec2>& path,
                                  const std::vector<Vec2>& waypoints, const std::string& title) {
    using namespace svg_detail;
    if (path.empty()) throw ValidationError("plot: empty path");

    double lo_x = path[0].x, hi_x = path[0].x, lo_y = path[0].y, hi_y = path[0].y;
    auto grow = [&](Vec2 p) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    };
    for (Vec2 p : path) grow(p);
    for (Vec2 p : waypoints) grow(p);
    Range xr = padded(lo_x, hi_x);
    Range yr = padded(lo_y, hi_y);

    // equalize scale by widening the narrower range
    const double x0 = kLeft, x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom, y1 = kTop;
    const double sx = (x1 - x0) / (xr.hi - xr.lo);
    const double sy = (y0 - y1) / (yr.hi - yr.lo);
    if (sx > sy) {
        const double want = (x1 - x0) / sy;
        const double mid = (xr.lo + xr.hi) / 2;
        xr = {mid - want / 2, mid + want / 2};
    } else if (sy > sx) {
        const double want = (y0 - y1) / sx;
        const double mid = (yr.lo + yr.hi) / 2;
        yr = {mid - want / 2, mid + want / 2};
    }
    auto px = [&](double x) { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); };
    auto py = [&](double y) { return y0 - (y - yr.lo) / (yr.hi - yr.lo) * (y0 - y1); };

    std::string out;
    open_svg(out, title);
    draw_axes(out, xr, yr, "x [m]", "y [m]");
    for (Vec2 w : waypoints)
        out += "<circle cx=\"" + fmt2(px(w.x)) + "\" cy=\"" + fmt2(py(w.y)) +
               "\" r=\"5\" fill=\"none\" stroke=\"#999999\"/>\n";
    out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out.push_back(' ');
        out += fmt2(px(path[i].x)) + "," + fmt2(py(path[i].y));
    }
    out += "\"/>\n";
    out += "<circle cx=\"" + fmt2(px(path.front().x)) + "\" cy=\"" + fmt2(py(path.front().y)) +
           "\" r=\"4\" fill=\"#2ca02c\"/>\n";
    out += "<circle cx=\"" + fmt2(px(path.back().x)) + "\" cy=\"" + fmt2(py(path.back().y)) +
           "\" r=\"4\" fill=\"#d62728\"/>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace waypoint_rl
