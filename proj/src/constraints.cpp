#include "udg/constraints.hpp"

#include <algorithm>

namespace udg {

int ConstraintSystem::var_of(int vertex, char axis) const {
  for (int i = 0; i < vars.size(); ++i) {
    const VarInfo& v = vars.vars[i];
    if (!v.aux && v.vertex == vertex && v.axis == axis) return i;
  }
  return -1;
}

PinMap auto_pin(const Graph& g) {
  if (g.edge_count() == 0) throw GraphError("auto_pin: graph has no edges");
  std::pair<std::string, std::string> best;
  bool have = false;
  for (const Edge& e : g.edges()) {
    std::string a = g.label(e.u), b = g.label(e.v);
    if (b < a) std::swap(a, b);
    if (!have || std::make_pair(a, b) < best) {
      best = {a, b};
      have = true;
    }
  }
  return PinMap{{best.first, {Rational(0), Rational(0)}},
                {best.second, {Rational(1), Rational(0)}}};
}

ConstraintSystem distance_constraints(const Graph& g, const PinMap& pins) {
  ConstraintSystem sys;
  sys.graph = g;
  sys.pins = pins;
  for (const auto& [label, xy] : pins) g.require(label);

  // Variables follow vertex label order, x before y, pinned vertices skipped.
  std::vector<int> order(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return g.label(a) < g.label(b); });
  for (int v : order) {
    if (pins.count(g.label(v))) continue;
    sys.vars.add(VarInfo{"x" + g.label(v), v, 'x', false, ""});
    sys.vars.add(VarInfo{"y" + g.label(v), v, 'y', false, ""});
  }

  auto coord = [&](int vertex, char axis) -> Polynomial {
    auto pin = pins.find(g.label(vertex));
    if (pin != pins.end())
      return Polynomial::constant(axis == 'x' ? pin->second.first : pin->second.second);
    return Polynomial::variable(sys.var_of(vertex, axis));
  };

  for (const Edge& e : g.edges()) {
    Polynomial dx = coord(e.u, 'x') - coord(e.v, 'x');
    Polynomial dy = coord(e.u, 'y') - coord(e.v, 'y');
    sys.polys.push_back(dx * dx + dy * dy - Polynomial::constant(1));
  }
  sys.distance_poly_count = static_cast<int>(sys.polys.size());
  return sys;
}

ConstraintSystem saturate_distinctness(
    const ConstraintSystem& sys,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  ConstraintSystem out = sys;
  const Graph& g = out.graph;
  for (const auto& [lu, lv] : pairs) {
    int u = g.require(lu), v = g.require(lv);
    if (u == v) throw GraphError("distinctness pair with identical vertices");

    auto coord = [&](int vertex, char axis) -> Polynomial {
      auto pin = out.pins.find(g.label(vertex));
      if (pin != out.pins.end())
        return Polynomial::constant(axis == 'x' ? pin->second.first : pin->second.second);
      return Polynomial::variable(out.var_of(vertex, axis));
    };

    int t = out.vars.add(VarInfo{"t_" + lu + "_" + lv, -1, 0, true,
                                 "distinctness " + lu + "," + lv});
    Polynomial dx = coord(u, 'x') - coord(v, 'x');
    Polynomial dy = coord(u, 'y') - coord(v, 'y');
    out.polys.push_back(Polynomial::variable(t) * (dx * dx + dy * dy) -
                        Polynomial::constant(1));
    out.saturated_pairs.push_back({lu, lv});
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> same_part_pairs(const Graph& g) {
  std::vector<int> color = bipartition(g);
  std::vector<std::pair<std::string, std::string>> out;
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (color[u] == color[v]) out.push_back({g.label(u), g.label(v)});
  return out;
}

std::vector<std::pair<std::string, std::string>> all_vertex_pairs(const Graph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v) out.push_back({g.label(u), g.label(v)});
  return out;
}

}  // namespace udg
