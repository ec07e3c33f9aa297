#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tcelldyn::svg {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
    std::string color = "#1c7ed6";
    bool dashed = false;
};

struct HLine {
    double y = 0.0;
    std::string label;
    std::string color = "#868e96";
};

struct Marker {
    double x = 0.0;
    double y = 0.0;
    std::string color = "#e03131";
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::vector<HLine> hlines;
    std::vector<Marker> markers;
    // Axis ranges default to the data bounds (plus padding).
    std::optional<double> x_min, x_max, y_min, y_max;
};

/// Self-contained SVG document with one panel per plot, stacked vertically.
std::string render(const std::vector<Plot>& panels, int width = 760, int panel_height = 300);

inline std::string render(const Plot& plot, int width = 760, int height = 320) {
    return render(std::vector<Plot>{plot}, width, height);
}

/// Categorical heatmap: cells[i][j] is a color index for row i (bottom-up on
/// the y axis), column j. Used for sweep classification grids.
struct Heatmap {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> x_centers;
    std::vector<double> y_centers;
    std::vector<std::vector<int>> cells;
    std::vector<std::string> palette;        // color per index
    std::vector<std::string> legend_labels;  // label per index
};

std::string render_heatmaps(const std::vector<Heatmap>& panels, int width = 760,
                            int panel_height = 300);

}  // namespace tcelldyn::svg
