#pragma once

#include "udg/graph.hpp"
#include "udg/poly.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace udg {

using PinMap = std::map<std::string, std::pair<Rational, Rational>>;

// One embedding problem: per-edge unit-distance polynomials (pins already
// substituted, "= 0" form) over the coordinate variables of the unpinned
// vertices, plus any distinctness saturation polynomials.
struct ConstraintSystem {
  Graph graph;
  VarTable vars;
  std::vector<Polynomial> polys;  // distance polys first, saturation appended
  PinMap pins;
  std::vector<std::pair<std::string, std::string>> saturated_pairs;
  int distance_poly_count = 0;

  // Variable index for vertex coordinate, -1 when the vertex is pinned.
  int var_of(int vertex, char axis) const;
};

// Pins the lexicographically first edge (by label pair) to (0,0)-(1,0).
PinMap auto_pin(const Graph& g);

// One polynomial per edge: (x_u - x_v)^2 + (y_u - y_v)^2 - 1 with pinned
// coordinates substituted exactly. Edges between two pinned vertices keep
// their (possibly zero, possibly constant) polynomial so the per-edge count
// is preserved.
ConstraintSystem distance_constraints(const Graph& g, const PinMap& pins);

// Rabinowitsch saturation: adds t_uv * ((x_u-x_v)^2 + (y_u-y_v)^2) - 1 per
// pair, forcing u and v to embed at distinct points.
ConstraintSystem saturate_distinctness(
    const ConstraintSystem& sys,
    const std::vector<std::pair<std::string, std::string>>& pairs);

// All vertex pairs lying in the same class of a bipartition; the cheap
// saturation set for bipartite graphs.
std::vector<std::pair<std::string, std::string>> same_part_pairs(const Graph& g);

std::vector<std::pair<std::string, std::string>> all_vertex_pairs(const Graph& g);

}  // namespace udg
