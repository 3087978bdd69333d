#include "poolgame/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace poolgame::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 64.0, kRight = 24.0, kTop = 34.0, kBottom = 46.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!(lo <= hi)) { lo = 0.0; hi = 1.0; }
        if (lo == hi) { lo -= 0.5; hi += 0.5; }
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

std::vector<double> ticks(const Range& r, int want = 5) {
    const double span = r.hi - r.lo;
    const double raw = span / want;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (mag * m >= raw) { step = mag * m; break; }
    }
    std::vector<double> out;
    for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-12 * span; t += step)
        out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    return out;
}

}  // namespace

std::string plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                 const std::vector<Series>& series, const std::vector<Markers>& markers) {
    Range xr, yr;
    for (const auto& s : series) {
        for (double v : s.x) xr.add(v);
        for (double v : s.y) yr.add(v);
    }
    for (const auto& m : markers) {
        for (double v : m.x) xr.add(v);
        for (double v : m.y) yr.add(v);
    }
    xr.finish();
    yr.finish();

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double v) { return kTop + ph - (v - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";

    for (double t : ticks(xr)) {
        const double x = px(t);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x)
            << "\" y2=\"" << num(kTop + ph) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(t) << "</text>\n";
    }
    for (double t : ticks(yr)) {
        const double y = py(t);
        out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(kLeft + pw) << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(t) << "</text>\n";
    }
    out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
        << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 8)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << xlabel
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << num(kTop + ph / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << num(kTop + ph / 2) << ")\">" << ylabel << "</text>\n";

    for (const auto& s : series) {
        if (s.x.empty()) continue;
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
        if (s.dashed) out << " stroke-dasharray=\"6 4\"";
        out << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) out << " ";
            out << num(px(s.x[i])) << "," << num(py(s.y[i]));
        }
        out << "\"/>\n";
    }
    for (const auto& m : markers) {
        for (std::size_t i = 0; i < m.x.size(); ++i) {
            out << "<circle cx=\"" << num(px(m.x[i])) << "\" cy=\"" << num(py(m.y[i]))
                << "\" r=\"4\" stroke=\"" << m.color << "\" fill=\""
                << (m.filled ? m.color : std::string("white")) << "\"/>\n";
        }
    }

    double ly = kTop + 14.0;
    for (const auto& s : series) {
        if (s.label.empty()) continue;
        out << "<line x1=\"" << num(kLeft + pw - 130) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
            << num(kLeft + pw - 106) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
            << "/>\n";
        out << "<text x=\"" << num(kLeft + pw - 100) << "\" y=\"" << num(ly)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        ly += 16.0;
    }
    for (const auto& m : markers) {
        if (m.label.empty()) continue;
        out << "<circle cx=\"" << num(kLeft + pw - 118) << "\" cy=\"" << num(ly - 4)
            << "\" r=\"4\" stroke=\"" << m.color << "\" fill=\""
            << (m.filled ? m.color : std::string("white")) << "\"/>\n";
        out << "<text x=\"" << num(kLeft + pw - 100) << "\" y=\"" << num(ly)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << m.label << "</text>\n";
        ly += 16.0;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace poolgame::svg
