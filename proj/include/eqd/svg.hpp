#pragma once

#include <span>
#include <string>

#include "eqd/combo.hpp"
#include "eqd/geom.hpp"
#include "eqd/poly.hpp"

namespace eqd {

/// SVG 1.1 drawing: polygon outline, one <line class="edge"> per edge, one
/// <circle class="vertex"> per vertex and one <text class="area"> per face.
/// viewBox is the polygon bounding box plus a 5% margin; y points up.
std::string render_svg(const CombinatorialType& g, const Polygon& p, const AreaAssignment& a,
                       std::span<const AffinePoint> interior);

}  // namespace eqd
