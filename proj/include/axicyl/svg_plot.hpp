/// @file svg_plot.hpp
/// @brief Minimal line plots as standalone SVG documents.
#pragma once

#include <string>
#include <vector>

namespace axicyl {

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> x;
    std::vector<double> y;
};

/// One polyline with axes, tick labels at the ends and the title. A constant
/// series is drawn as a flat line through the middle of the frame. Throws
/// Error(invalid_argument) when x and y differ in length or are empty.
std::string render_svg(const LinePlot& plot);

}  // namespace axicyl
