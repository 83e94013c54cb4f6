#include "chua/svg.hpp"

#include <cmath>
#include <cstdio>

namespace chua {

namespace {

// Fixed-precision pixel coordinates keep files byte-stable.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

SvgCanvas::SvgCanvas(int width, int height, double x_min, double x_max, double y_min, double y_max)
    : w_(width), h_(height), x0_(x_min), x1_(x_max), y0_(y_min), y1_(y_max) {}

double SvgCanvas::px(double x) const { return (x - x0_) / (x1_ - x0_) * w_; }
double SvgCanvas::py(double y) const { return h_ - (y - y0_) / (y1_ - y0_) * h_; }

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& color, double stroke_width) {
    if (pts.empty()) return;
    body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
             fmt(stroke_width) + "\" points=\"";
    for (const auto& [x, y] : pts) {
        body_ += fmt(px(x));
        body_ += ',';
        body_ += fmt(py(y));
        body_ += ' ';
    }
    body_ += "\"/>\n";
}

void SvgCanvas::scatter(const std::vector<std::pair<double, double>>& pts,
                        const std::string& color, double radius) {
    for (const auto& [x, y] : pts)
        body_ += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) + "\" r=\"" + fmt(radius) +
                 "\" fill=\"" + color + "\"/>\n";
}

void SvgCanvas::rect(double rx0, double ry0, double rx1, double ry1, const std::string& fill) {
    const double X0 = px(rx0), X1 = px(rx1);
    const double Y0 = py(ry1), Y1 = py(ry0);  // world y grows upward
    body_ += "<rect x=\"" + fmt(X0) + "\" y=\"" + fmt(Y0) + "\" width=\"" + fmt(X1 - X0) +
             "\" height=\"" + fmt(Y1 - Y0) + "\" fill=\"" + fill + "\"/>\n";
}

void SvgCanvas::text(double x, double y, const std::string& s, int px_size) {
    body_ += "<text x=\"" + fmt(px(x)) + "\" y=\"" + fmt(py(y)) + "\" font-size=\"" +
             std::to_string(px_size) + "\" font-family=\"monospace\">" + s + "</text>\n";
}

void SvgCanvas::frame() {
    body_ += "<rect x=\"0.5\" y=\"0.5\" width=\"" + fmt(w_ - 1.0) + "\" height=\"" +
             fmt(h_ - 1.0) + "\" fill=\"none\" stroke=\"#444\"/>\n";
}

std::string SvgCanvas::str() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" "
           "width=\"" +
           std::to_string(w_) + "\" height=\"" + std::to_string(h_) + "\">\n" + body_ + "</svg>\n";
}

}  // namespace chua
