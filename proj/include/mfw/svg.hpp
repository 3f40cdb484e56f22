#pragma once

#include <string>
#include <vector>

namespace mfw {

struct PlotSeries {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
};

// Static line chart: one polyline per series, axis box, ticks, legend.
// Non-finite points are dropped.  Callers do any log scaling themselves.
std::string render_line_chart(const std::string& title,
                              const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<PlotSeries>& series);

void write_svg(const std::string& path, const std::string& title,
               const std::string& x_label, const std::string& y_label,
               const std::vector<PlotSeries>& series);

}  // namespace mfw
