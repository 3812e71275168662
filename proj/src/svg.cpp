#include "citenet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace citenet::svg {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#bcbd22", "#17becf", "#7f7f7f"};
constexpr double kWidth = 640, kHeight = 400, kLeft = 60, kRight = 20, kTop = 40, kBottom = 60;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

void header(std::ostringstream& out, const std::string& title, double width = kWidth, double height = kHeight) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\" font-family=\"sans-serif\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << num(width / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n";
}

void axes(std::ostringstream& out, const std::string& x_label, const std::string& y_label, double y_min,
          double y_max) {
    const double x0 = kLeft, y0 = kHeight - kBottom;
    out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(kWidth - kRight) << "\" y2=\""
        << num(y0) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << num(x0) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(y0)
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 12)
        << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(x_label) << "</text>\n"
        << "<text x=\"14\" y=\"" << num((kTop + y0) / 2) << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 "
        << num((kTop + y0) / 2) << ")\">" << escape(y_label) << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double v = y_min + (y_max - y_min) * i / 4.0;
        const double y = y0 - (y0 - kTop) * i / 4.0;
        out << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\" font-size=\"10\">"
            << num(v) << "</text>\n";
    }
}

}  // namespace

std::string community_color(std::size_t c) { return c < std::size(kPalette) - 1 ? kPalette[c] : "#bbbbbb"; }

std::string bar_chart(const std::string& title, const std::vector<std::string>& labels,
                      const std::vector<double>& values, const std::string& y_label) {
    std::ostringstream out;
    header(out, title);
    double y_max = 0.0;
    for (double v : values) y_max = std::max(y_max, v);
    if (y_max <= 0.0) y_max = 1.0;
    axes(out, "community", y_label, 0.0, y_max);
    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    const double slot = values.empty() ? plot_w : plot_w / static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double h = plot_h * values[i] / y_max;
        const double x = kLeft + slot * static_cast<double>(i) + slot * 0.15;
        out << "<rect x=\"" << num(x) << "\" y=\"" << num(kTop + plot_h - h) << "\" width=\"" << num(slot * 0.7)
            << "\" height=\"" << num(h) << "\" fill=\"" << community_color(i) << "\"/>\n"
            << "<text x=\"" << num(x + slot * 0.35) << "\" y=\"" << num(kTop + plot_h + 14)
            << "\" text-anchor=\"middle\" font-size=\"10\">" << escape(i < labels.size() ? labels[i] : "") << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string line_chart(const std::string& title, const std::vector<Series>& series, const std::string& x_label,
                       const std::string& y_label) {
    std::ostringstream out;
    header(out, title);
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min, y_max = 0.0;
    for (const auto& s : series)
        for (const auto& p : s.points) {
            x_min = std::min(x_min, p.x);
            x_max = std::max(x_max, p.x);
            y_max = std::max(y_max, p.y + p.error.value_or(0.0));
        }
    if (!std::isfinite(x_min)) x_min = 0.0, x_max = 1.0;
    if (x_max <= x_min) x_max = x_min + 1.0;
    if (y_max <= 0.0) y_max = 1.0;
    axes(out, x_label, y_label, 0.0, y_max);
    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + plot_w * (x - x_min) / (x_max - x_min); };
    auto py = [&](double y) { return kTop + plot_h - plot_h * y / y_max; };
    out << "<text x=\"" << num(kLeft) << "\" y=\"" << num(kHeight - kBottom + 14) << "\" font-size=\"10\">"
        << num(x_min) << "</text>\n<text x=\"" << num(kWidth - kRight) << "\" y=\"" << num(kHeight - kBottom + 14)
        << "\" text-anchor=\"end\" font-size=\"10\">" << num(x_max) << "</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const std::string color = community_color(s.color);
        if (!s.points.empty()) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& p : s.points) out << num(px(p.x)) << ',' << num(py(p.y)) << ' ';
            out << "\"/>\n";
        }
        for (const auto& p : s.points)
            if (p.error)
                out << "<line x1=\"" << num(px(p.x)) << "\" y1=\"" << num(py(p.y - *p.error)) << "\" x2=\""
                    << num(px(p.x)) << "\" y2=\"" << num(py(p.y + *p.error)) << "\" stroke=\"" << color << "\"/>\n";
        out << "<text x=\"" << num(kWidth - kRight - 4) << "\" y=\"" << num(kTop + 12 + 12 * static_cast<double>(i))
            << "\" text-anchor=\"end\" font-size=\"10\" fill=\"" << color << "\">" << escape(s.name) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string network(const CitationGraph& g, const std::vector<Point>& positions,
                    const std::vector<std::optional<std::size_t>>& community) {
    std::ostringstream out;
    const double size = 800, margin = 20;
    header(out, "citation network", size, size);
    double extent = 1e-9;
    for (const auto& p : positions) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    auto sx = [&](double x) { return size / 2 + (size / 2 - margin) * x / extent; };
    for (const auto& [u, v] : g.edges())
        out << "<line x1=\"" << num(sx(positions[u].x)) << "\" y1=\"" << num(sx(positions[u].y)) << "\" x2=\""
            << num(sx(positions[v].x)) << "\" y2=\"" << num(sx(positions[v].y))
            << "\" stroke=\"#999999\" stroke-width=\"0.3\" stroke-opacity=\"0.5\"/>\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const std::string color =
            v < community.size() && community[v] ? community_color(*community[v]) : std::string("#bbbbbb");
        out << "<circle cx=\"" << num(sx(positions[v].x)) << "\" cy=\"" << num(sx(positions[v].y))
            << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace citenet::svg
