#include "mfw/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mfw {

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_line_chart(const std::string& title,
                              const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<PlotSeries>& series) {
    if (series.empty()) throw std::invalid_argument("chart needs at least one series");
    const double width = 720, height = 480;
    const double left = 70, right = 24, top = 44, bottom = 54;
    const double pw = width - left - right, ph = height - top - bottom;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.xs.size() != s.ys.size())
            throw std::invalid_argument("series '" + s.label + "' has mismatched lengths");
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
            xmin = std::min(xmin, s.xs[i]);
            xmax = std::max(xmax, s.xs[i]);
            ymin = std::min(ymin, s.ys[i]);
            ymax = std::max(ymax, s.ys[i]);
        }
    }
    if (!std::isfinite(xmin) || !std::isfinite(ymin))
        throw std::invalid_argument("chart has no finite data points");
    if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }

    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n"
        << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n"
        << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    const int nticks = 5;
    for (int t = 0; t <= nticks; ++t) {
        const double fx = xmin + (xmax - xmin) * t / nticks;
        const double fy = ymin + (ymax - ymin) * t / nticks;
        const double gx = px(fx), gy = py(fy);
        svg << "<line x1=\"" << num(gx) << "\" y1=\"" << num(top + ph)
            << "\" x2=\"" << num(gx) << "\" y2=\"" << num(top + ph + 5)
            << "\" stroke=\"#333333\"/>\n"
            << "<text x=\"" << num(gx) << "\" y=\"" << num(top + ph + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(fx)
            << "</text>\n"
            << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(gy)
            << "\" x2=\"" << num(left) << "\" y2=\"" << num(gy)
            << "\" stroke=\"#333333\"/>\n"
            << "<text x=\"" << num(left - 8) << "\" y=\"" << num(gy + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << tick_label(fy)
            << "</text>\n";
    }

    svg << "<text x=\"" << num(width / 2) << "\" y=\"22\" font-size=\"15\" "
           "text-anchor=\"middle\">"
        << xml_escape(title) << "</text>\n"
        << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(height - 12)
        << "\" font-size=\"13\" text-anchor=\"middle\">" << xml_escape(x_label)
        << "</text>\n"
        << "<text x=\"16\" y=\"" << num(top + ph / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << num(top + ph / 2) << ")\">" << xml_escape(y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))];
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
            if (!first) svg << ' ';
            svg << num(px(s.xs[i])) << ',' << num(py(s.ys[i]));
            first = false;
        }
        svg << "\"/>\n";
        const double ly = top + 16 + 16 * static_cast<double>(si);
        svg << "<rect x=\"" << num(left + pw - 150) << "\" y=\"" << num(ly - 9)
            << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << num(left + pw - 136) << "\" y=\"" << num(ly)
            << "\" font-size=\"12\">" << xml_escape(s.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_svg(const std::string& path, const std::string& title,
               const std::string& x_label, const std::string& y_label,
               const std::vector<PlotSeries>& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write svg file '" + path + "'");
    out << render_line_chart(title, x_label, y_label, series);
    if (!out.flush()) throw std::runtime_error("failed writing svg file '" + path + "'");
}

}  // namespace mfw
