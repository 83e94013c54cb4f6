#pragma once

// Data-driven SVG scatter/line rendering with a fixed world viewport, enough
// for attractor projections, bifurcation diagrams and label heat maps
// without a plotting dependency.

#include <string>
#include <utility>
#include <vector>

namespace chua {

class SvgCanvas {
public:
    /// Pixel size plus the world-coordinate window that maps onto it
    /// (y grows upward in world coordinates).
    SvgCanvas(int width, int height, double x_min, double x_max, double y_min, double y_max);

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                  double stroke_width = 1.0);
    void scatter(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                 double radius = 1.0);
    /// Axis-aligned world-space rectangle (used by heat maps).
    void rect(double x0, double y0, double x1, double y1, const std::string& fill);
    void text(double x, double y, const std::string& s, int px_size = 12);
    void frame();  ///< thin border around the viewport

    [[nodiscard]] std::string str() const;

private:
    [[nodiscard]] double px(double x) const;
    [[nodiscard]] double py(double y) const;

    int w_, h_;
    double x0_, x1_, y0_, y1_;
    std::string body_;
};

}  // namespace chua
