#pragma once

// Minimal static SVG line charts for the benchmark outputs. No dependency,
// deterministic output: identical input data yields identical bytes.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lowrank::plot {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y), x ascending
};

namespace detail {

inline std::string num(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

inline const char* color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[i % 8];
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&')
            out += "&amp;";
        else if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else
            out += c;
    }
    return out;
}

}  // namespace detail

/// Writes one line chart; y may be log10-scaled (nonpositive values are
/// clamped to a tenth of the smallest positive value in the data).
inline void write_line_chart(const std::string& path, const std::string& title,
                             const std::string& x_label, const std::string& y_label,
                             const std::vector<Series>& series, bool log_y) {
    constexpr double width = 860, height = 540;
    constexpr double left = 80, right = 680, top = 50, bottom = 480;

    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    double min_positive = std::numeric_limits<double>::infinity();
    bool first = true;
    for (const Series& s : series)
        for (auto [x, y] : s.points) {
            if (y > 0) min_positive = std::min(min_positive, y);
            if (first) {
                x_min = x_max = x;
                y_min = y_max = y;
                first = false;
            } else {
                x_min = std::min(x_min, x);
                x_max = std::max(x_max, x);
                y_min = std::min(y_min, y);
                y_max = std::max(y_max, y);
            }
        }
    if (first) throw std::invalid_argument("write_line_chart: no data");
    if (!std::isfinite(min_positive)) min_positive = 1e-18;

    auto clamp_y = [&](double y) { return y > 0 ? y : min_positive / 10.0; };
    if (log_y) {
        y_min = std::log10(clamp_y(y_min));
        y_max = std::log10(clamp_y(y_max == 0 ? min_positive : y_max));
        y_min = std::floor(y_min - 1e-9);
        y_max = std::ceil(y_max + 1e-9);
        if (y_max <= y_min) y_max = y_min + 1;
    } else {
        if (y_max <= y_min) y_max = y_min + 1;
        const double pad = 0.05 * (y_max - y_min);
        y_min = std::min(0.0, y_min);
        y_max += pad;
    }
    if (x_max <= x_min) x_max = x_min + 1;

    auto x_pix = [&](double x) {
        return left + (x - x_min) / (x_max - x_min) * (right - left);
    };
    auto y_pix = [&](double y) {
        const double t = log_y ? std::log10(clamp_y(y)) : y;
        return bottom - (t - y_min) / (y_max - y_min) * (bottom - top);
    };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_line_chart: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << (left + right) / 2 << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << detail::escape(title)
        << "</text>\n";

    // axes
    out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << bottom + 36
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << detail::escape(x_label) << "</text>\n";
    out << "<text x=\"22\" y=\"" << (top + bottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 22 " << (top + bottom) / 2 << ")\">"
        << detail::escape(y_label) << "</text>\n";

    // x ticks: distinct data abscissae when few, else an even subdivision
    std::vector<double> xs;
    for (const Series& s : series)
        for (auto [x, y] : s.points) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() > 12) {
        xs.clear();
        for (int i = 0; i <= 8; ++i) xs.push_back(x_min + (x_max - x_min) * i / 8.0);
    }
    for (double x : xs) {
        const double px = x_pix(x);
        out << "<line x1=\"" << detail::num(px) << "\" y1=\"" << bottom << "\" x2=\""
            << detail::num(px) << "\" y2=\"" << bottom + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << detail::num(px) << "\" y=\"" << bottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << detail::num(x) << "</text>\n";
    }

    // y ticks
    if (log_y) {
        int step = 1;
        while ((y_max - y_min) / step > 12) ++step;
        for (double e = y_min; e <= y_max + 1e-9; e += step) {
            const double py = bottom - (e - y_min) / (y_max - y_min) * (bottom - top);
            out << "<line x1=\"" << left - 5 << "\" y1=\"" << detail::num(py) << "\" x2=\""
                << left << "\" y2=\"" << detail::num(py) << "\" stroke=\"black\"/>\n";
            out << "<line x1=\"" << left << "\" y1=\"" << detail::num(py) << "\" x2=\"" << right
                << "\" y2=\"" << detail::num(py)
                << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
            out << "<text x=\"" << left - 9 << "\" y=\"" << detail::num(py + 4)
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e"
                << detail::num(e) << "</text>\n";
        }
    } else {
        for (int i = 0; i <= 6; ++i) {
            const double y = y_min + (y_max - y_min) * i / 6.0;
            const double py = y_pix(y);
            out << "<line x1=\"" << left - 5 << "\" y1=\"" << detail::num(py) << "\" x2=\""
                << left << "\" y2=\"" << detail::num(py) << "\" stroke=\"black\"/>\n";
            out << "<text x=\"" << left - 9 << "\" y=\"" << detail::num(py + 4)
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
                << detail::num(std::round(y * 1000.0) / 1000.0) << "</text>\n";
        }
    }

    // series polylines and legend
    for (std::size_t i = 0; i < series.size(); ++i) {
        const Series& s = series[i];
        if (s.points.empty()) continue;
        out << "<polyline fill=\"none\" stroke=\"" << detail::color(i)
            << "\" stroke-width=\"1.8\" points=\"";
        for (auto [x, y] : s.points)
            out << detail::num(x_pix(x)) << "," << detail::num(y_pix(y)) << " ";
        out << "\"/>\n";
        for (auto [x, y] : s.points)
            out << "<circle cx=\"" << detail::num(x_pix(x)) << "\" cy=\""
                << detail::num(y_pix(y)) << "\" r=\"2.5\" fill=\"" << detail::color(i)
                << "\"/>\n";
        const double ly = top + 18.0 * static_cast<double>(i);
        out << "<line x1=\"" << right + 14 << "\" y1=\"" << detail::num(ly) << "\" x2=\""
            << right + 44 << "\" y2=\"" << detail::num(ly) << "\" stroke=\"" << detail::color(i)
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << right + 50 << "\" y=\"" << detail::num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << detail::escape(s.label)
            << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write_line_chart: write failed for " + path);
}

}  // namespace lowrank::plot
