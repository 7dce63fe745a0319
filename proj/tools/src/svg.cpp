#include "gaffine_cli/svg.hpp"

#include "gaffine_cli/format.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace gaffine::cli {

namespace {

const char* arrow_color(const std::string& label)
{
    if (label == "e1")
        return "#d62728";
    if (label == "e2")
        return "#2ca02c";
    if (label == "t")
        return "#ff7f0e";
    return "#9467bd";
}

// SVG y grows downward; the plot is flipped so that y points up.
std::string xy(const Point& p) { return fmt::format("{},{}", file_number(p.x()), file_number(-p.y())); }

} // namespace

std::string render_svg(const PlotData& data, double width_px)
{
    double lo_x = std::numeric_limits<double>::infinity();
    double lo_y = lo_x;
    double hi_x = -lo_x;
    double hi_y = -lo_x;
    auto grow = [&](const Point& p) {
        lo_x = std::min(lo_x, p.x());
        hi_x = std::max(hi_x, p.x());
        lo_y = std::min(lo_y, p.y());
        hi_y = std::max(hi_y, p.y());
    };
    for (const auto& p : data.curve)
        grow(p);

    double extent = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    double longest = 0.0;
    for (const auto& g : data.glyphs)
        for (const auto& a : g.arrows)
            longest = std::max(longest, a.v.norm());
    const double scale = longest > 0.0 ? 0.1 * extent / longest : 0.0;
    for (const auto& g : data.glyphs)
        for (const auto& a : g.arrows) {
            grow(a.from);
            grow(a.from + scale * a.v);
        }

    const double w = std::max(hi_x - lo_x, 1e-9);
    const double h = std::max(hi_y - lo_y, 1e-9);
    const double mx = 0.05 * w;
    const double my = 0.05 * h;
    const double vx = lo_x - mx;
    const double vy = -(hi_y + my);
    const double vw = w + 2.0 * mx;
    const double vh = h + 2.0 * my;
    const double height_px = std::clamp(width_px * vh / vw, 50.0, 4.0 * width_px);
    const double stroke = 0.003 * std::max(vw, vh);

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
                       "viewBox=\"{} {} {} {}\">\n",
                       file_number(width_px), file_number(std::round(height_px)), file_number(vx), file_number(vy),
                       file_number(vw), file_number(vh));
    out += fmt::format("<polyline class=\"border\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"{}\" "
                       "points=\"{},{} {},{} {},{} {},{} {},{}\"/>\n",
                       file_number(stroke), file_number(vx), file_number(vy), file_number(vx + vw), file_number(vy),
                       file_number(vx + vw), file_number(vy + vh), file_number(vx), file_number(vy + vh),
                       file_number(vx), file_number(vy));

    std::string pts;
    for (const auto& p : data.curve) {
        if (!pts.empty())
            pts += ' ';
        pts += xy(p);
    }
    out += fmt::format("<polyline class=\"curve\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"{}\" "
                       "points=\"{}\"/>\n",
                       file_number(2.0 * stroke), pts);

    for (const auto& g : data.glyphs) {
        out += "<g class=\"frame\">\n";
        for (const auto& a : g.arrows) {
            const Point tip = a.from + scale * a.v;
            const Eigen::Vector2d dir = (tip - a.from).normalized();
            const Eigen::Vector2d side(-dir.y(), dir.x());
            const double head = 0.015 * std::max(vw, vh);
            const Point b1 = tip - head * dir + 0.5 * head * side;
            const Point b2 = tip - head * dir - 0.5 * head * side;
            const char* color = arrow_color(a.label);
            out += fmt::format("  <line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" "
                               "stroke-width=\"{}\"/>\n",
                               a.label, file_number(a.from.x()), file_number(-a.from.y()), file_number(tip.x()),
                               file_number(-tip.y()), color, file_number(stroke));
            out += fmt::format("  <polygon class=\"{}\" fill=\"{}\" points=\"{} {} {}\"/>\n", a.label, color, xy(tip),
                               xy(b1), xy(b2));
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace gaffine::cli
