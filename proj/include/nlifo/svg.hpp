#pragma once

#include <string>
#include <vector>

namespace nlifo {

// Self-contained SVG emission for the CLI plots: line charts and heatmaps
// with labeled, nicely ticked axes. No external renderer involved.

struct SvgSeries {
    std::string label;
    std::string color;  // e.g. "#d62728"
    const std::vector<double>* y = nullptr;
};

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<double>& x, const std::vector<SvgSeries>& series);

// values row-major [y][x], already normalized to [0, 1]
void write_heatmap(const std::string& path, const std::string& title,
                   const std::string& x_label, const std::string& y_label,
                   const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& values);

}  // namespace nlifo
