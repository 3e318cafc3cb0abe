#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ornstein {

struct PlotOptions {
    std::string title;
    std::string x_label = "x";
    std::string y_label = "y";
    /// slope/intercept of a fitted line to overlay.
    std::optional<std::pair<double, double>> fit;
    int width = 640;
    int height = 420;
};

/// Renders the first two numeric CSV columns as an SVG scatter plot with axes
/// and optional fitted line. The CSV needs a header row plus at least two
/// data rows with at least two columns; anything else is rejected.
std::string plot_csv_to_svg(const std::string& csv, const PlotOptions& opt);

}  // namespace ornstein
