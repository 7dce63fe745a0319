#pragma once

#include <gaffine/affine.hpp>

#include <string>
#include <vector>

namespace gaffine::cli {

struct Arrow {
    Point from;
    Eigen::Vector2d v;
    std::string label; // e1, e2, t or n
};

/// Arrows drawn at one sample.
struct Glyph {
    std::vector<Arrow> arrows;
};

struct PlotData {
    std::vector<Point> curve;
    std::vector<Glyph> glyphs;
};

/// SVG 1.1 document: a border, the curve polyline and one group per glyph.
/// The view box fits every point with a 5% margin; y points up. Arrow lengths
/// are scaled by a common factor so the longest spans 10% of the view.
std::string render_svg(const PlotData& data, double width_px = 800.0);

} // namespace gaffine::cli
