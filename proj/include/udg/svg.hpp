#pragma once

#include "udg/embed.hpp"
#include "udg/graph.hpp"

#include <span>
#include <string>

namespace udg {

struct SvgStyle {
  double widthPx = 640.0;
  double marginPx = 40.0;
  double vertexRadiusPx = 5.0;
  double deviationTol = 1e-9;  // edges beyond this draw dashed with a length label
};

// Deterministic SVG: labeled vertex circles, solid unit edges, dashed and
// annotated edges where the length deviates beyond the tolerance. Identical
// input yields byte-identical output.
std::string render_svg(const Graph& g, std::span<const Vec2> coords, const SvgStyle& style = {});

}  // namespace udg
