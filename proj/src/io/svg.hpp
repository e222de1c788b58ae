#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qpl {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color;  // empty -> palette
};

/// Minimal standalone SVG line plot: axes, ticks, zero line, legend.
/// Plots are views; every plotted series must also exist as a table file.
void write_line_plot_svg(const std::filesystem::path& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         const std::vector<PlotSeries>& series, int width = 860,
                         int height = 560);

}  // namespace qpl
