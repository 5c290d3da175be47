#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace collab::svg {

inline constexpr double kWidth = 800.0;
inline constexpr double kHeight = 600.0;
/// Plot area is the viewport inset by 5% on every side.
inline constexpr double kMarginX = 0.05 * kWidth;
inline constexpr double kMarginY = 0.05 * kHeight;

inline constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
};

struct ScatterPoint {
    double x = 0.0;
    double y = 0.0;
    std::optional<int> cluster;
};

struct ScatterPlotSpec {
    std::vector<ScatterPoint> points;
    std::string x_label;
    std::string y_label;
    std::string title;
    std::optional<double> vertical_line;
    std::optional<double> horizontal_line;
    /// Emitted verbatim (after sanitizing) as XML comments in the header.
    std::vector<std::string> metadata;
};

struct LinePlotSpec {
    std::vector<std::array<double, 2>> points;
    std::string x_label;
    std::string y_label;
    std::string title;
    std::vector<std::string> metadata;
};

/// Linear map from a data extent onto the plot area. Degenerate extents are
/// widened by 0.5 on each side.
struct AxisMap {
    double lo = 0.0;
    double hi = 1.0;
    double px_lo = 0.0;
    double px_hi = 1.0;

    double operator()(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

AxisMap x_axis_map(double data_min, double data_max);
/// SVG y grows downward, so the data minimum maps to the bottom edge.
AxisMap y_axis_map(double data_min, double data_max);

const char* cluster_color(int cluster);

/// Standalone SVG 1.1 document, 800x600, circles of radius 4.
std::string render_scatter(const ScatterPlotSpec& spec);

/// Same frame as render_scatter with the points joined by one polyline.
std::string render_line(const LinePlotSpec& spec);

} // namespace collab::svg
