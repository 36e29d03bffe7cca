#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "capwhitham/errors.hpp"
#include "capwhitham/format.hpp"

namespace capwhitham::io {

enum class PlotKind { line, scatter };
// signed_log maps y to sign(y) log10(1 + |y|), for curves spanning many decades.
enum class AxisScale { linear, signed_log };

struct Marker {
    double at;
    std::string label;
};

struct PlotSpec {
    PlotKind kind = PlotKind::line;
    std::string title;
    std::string x_label, y_label;
    std::vector<std::pair<double, double>> points;
    std::vector<Marker> x_markers;  // vertical reference lines
    std::vector<Marker> y_markers;  // horizontal reference lines, in data units
    AxisScale y_scale = AxisScale::linear;
    std::optional<std::pair<double, double>> x_range, y_range;
};

inline constexpr int svg_width = 800;
inline constexpr int svg_height = 500;

namespace detail {

inline double scale_y(AxisScale s, double y) {
    return s == AxisScale::linear ? y : std::copysign(std::log10(1 + std::abs(y)), y);
}

inline std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += c;
        }
    }
    return o;
}

inline std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
    const double span = hi - lo;
    if (!(span > 0)) return {lo};
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return t;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace detail

inline void validate(const PlotSpec& spec) {
    for (std::size_t i = 0; i < spec.points.size(); ++i) {
        const auto [x, y] = spec.points[i];
        if (!std::isfinite(x) || !std::isfinite(y))
            throw DomainError("plot points must be finite", {{"index", std::to_string(i)}}, "plot");
        if (spec.kind == PlotKind::line && i > 0 && !(x > spec.points[i - 1].first))
            throw DomainError("line plot requires increasing x", {{"index", std::to_string(i)}}, "plot");
    }
}

/// Static 800x500 rendering.
inline std::string render_svg(const PlotSpec& spec) {
    validate(spec);
    const double left = 90, right = 30, top = 40, bottom = 60;
    const double pw = svg_width - left - right, ph = svg_height - top - bottom;

    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!spec.points.empty()) {
        x0 = x1 = spec.points.front().first;
        y0 = y1 = detail::scale_y(spec.y_scale, spec.points.front().second);
        for (auto [x, y] : spec.points) {
            const double sy = detail::scale_y(spec.y_scale, y);
            x0 = std::min(x0, x), x1 = std::max(x1, x);
            y0 = std::min(y0, sy), y1 = std::max(y1, sy);
        }
    }
    for (const auto& m : spec.y_markers) {
        const double sy = detail::scale_y(spec.y_scale, m.at);
        y0 = std::min(y0, sy), y1 = std::max(y1, sy);
    }
    if (spec.x_range) std::tie(x0, x1) = *spec.x_range;
    if (spec.y_range) std::tie(y0, y1) = *spec.y_range;
    if (x1 <= x0) x0 -= 0.5, x1 += 0.5;
    if (y1 <= y0) y0 -= 0.5, y1 += 0.5;
    if (!spec.y_range) {
        const double pad = 0.05 * (y1 - y0);
        y0 -= pad, y1 += pad;
    }
    auto X = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto Y = [&](double sy) { return top + (1 - (sy - y0) / (y1 - y0)) * ph; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_width << "\" height=\"" << svg_height
      << "\" viewBox=\"0 0 " << svg_width << ' ' << svg_height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << svg_width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << detail::escape(spec.title)
      << "</text>\n";
    s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : detail::nice_ticks(x0, x1)) {
        s << "<line x1=\"" << detail::px(X(t)) << "\" y1=\"" << top + ph << "\" x2=\"" << detail::px(X(t)) << "\" y2=\""
          << top + ph + 5 << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << detail::px(X(t)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
          << detail::tick_label(t) << "</text>\n";
    }
    for (double t : detail::nice_ticks(y0, y1)) {
        s << "<line x1=\"" << left - 5 << "\" y1=\"" << detail::px(Y(t)) << "\" x2=\"" << left << "\" y2=\"" << detail::px(Y(t))
          << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << left - 8 << "\" y=\"" << detail::px(Y(t) + 4) << "\" text-anchor=\"end\">" << detail::tick_label(t)
          << "</text>\n";
    }
    s << "<text x=\"" << left + pw / 2 << "\" y=\"" << svg_height - 15 << "\" text-anchor=\"middle\">"
      << detail::escape(spec.x_label) << "</text>\n";
    s << "<text transform=\"translate(20," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << detail::escape(spec.y_label) << "</text>\n";

    for (const auto& m : spec.y_markers) {
        const double y = Y(detail::scale_y(spec.y_scale, m.at));
        s << "<line x1=\"" << left << "\" y1=\"" << detail::px(y) << "\" x2=\"" << left + pw << "\" y2=\"" << detail::px(y)
          << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
        if (!m.label.empty())
            s << "<text x=\"" << left + pw - 4 << "\" y=\"" << detail::px(y - 4) << "\" text-anchor=\"end\" fill=\"gray\">"
              << detail::escape(m.label) << "</text>\n";
    }
    for (const auto& m : spec.x_markers) {
        const double x = X(m.at);
        s << "<line x1=\"" << detail::px(x) << "\" y1=\"" << top << "\" x2=\"" << detail::px(x) << "\" y2=\"" << top + ph
          << "\" stroke=\"firebrick\" stroke-dasharray=\"4 3\"/>\n";
        if (!m.label.empty())
            s << "<text x=\"" << detail::px(x + 4) << "\" y=\"" << top + 14 << "\" fill=\"firebrick\">" << detail::escape(m.label)
              << "</text>\n";
    }

    if (spec.kind == PlotKind::line && !spec.points.empty()) {
        s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < spec.points.size(); ++i) {
            const auto [x, y] = spec.points[i];
            s << (i ? " " : "") << detail::px(X(x)) << ',' << detail::px(Y(detail::scale_y(spec.y_scale, y)));
        }
        s << "\"/>\n";
    } else {
        for (auto [x, y] : spec.points)
            s << "<circle cx=\"" << detail::px(X(x)) << "\" cy=\"" << detail::px(Y(detail::scale_y(spec.y_scale, y)))
              << "\" r=\"4\" fill=\"steelblue\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

} // namespace capwhitham::io
