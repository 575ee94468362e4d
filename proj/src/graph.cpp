#include "udg/graph.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace udg {

Graph::Graph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges)
    : labels_(std::move(labels)) {
  const int n = vertex_count();
  {
    std::set<std::string> seen;
    for (const auto& l : labels_) {
      if (l.empty()) throw GraphError("empty vertex label");
      if (!seen.insert(l).second) throw GraphError("duplicate vertex label '" + l + "'");
    }
  }
  std::set<Edge> dedup;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw GraphError("edge endpoint out of range");
    if (u == v) throw GraphError("self-loop at '" + labels_[u] + "'");
    dedup.insert(Edge{std::min(u, v), std::max(u, v)});
  }
  if (dedup.size() != edges.size()) throw GraphError("duplicate edge in edge list");
  edges_.assign(dedup.begin(), dedup.end());
  adj_.assign(n, {});
  for (const Edge& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

int Graph::index_of(std::string_view label) const {
  for (int i = 0; i < vertex_count(); ++i)
    if (labels_[i] == label) return i;
  return -1;
}

int Graph::require(std::string_view label) const {
  int i = index_of(label);
  if (i < 0) throw GraphError("no vertex labeled '" + std::string(label) + "'");
  return i;
}

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  Edge e{std::min(u, v), std::max(u, v)};
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

namespace {

int parse_int_at(std::string_view text, size_t& pos, const char* what) {
  size_t start = pos;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
  size_t digits = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == digits) throw LcfError(std::string("expected ") + what, start);
  return std::stoi(std::string(text.substr(start, pos - start)));
}

void skip_ws(std::string_view text, size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

}  // namespace

LcfSpec parse_lcf(std::string_view text) {
  size_t pos = 0;
  skip_ws(text, pos);
  if (pos >= text.size() || (text[pos] != '(' && text[pos] != '['))
    throw LcfError("expected '(' or '['", pos);
  const char close = text[pos] == '(' ? ')' : ']';
  ++pos;
  LcfSpec spec;
  for (;;) {
    skip_ws(text, pos);
    spec.chords.push_back(parse_int_at(text, pos, "chord integer"));
    skip_ws(text, pos);
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == close) {
      ++pos;
      break;
    }
    throw LcfError(std::string("expected ',' or '") + close + "'", pos);
  }
  skip_ws(text, pos);
  if (pos >= text.size() || text[pos] != '^') throw LcfError("expected '^'", pos);
  ++pos;
  skip_ws(text, pos);
  spec.repeat = parse_int_at(text, pos, "repeat count");
  skip_ws(text, pos);
  if (pos != text.size()) throw LcfError("trailing characters", pos);

  if (spec.repeat < 1) throw LcfError("repeat must be positive", std::string_view::npos);
  const int n = spec.n();
  if (n < 3) throw LcfError("need at least 3 vertices", std::string_view::npos);
  const int k = static_cast<int>(spec.chords.size());
  for (int c : spec.chords) {
    if (c == 0) throw LcfError("zero chord", std::string_view::npos);
    if (std::abs(c) >= n)
      throw LcfError("chord magnitude must be below vertex count", std::string_view::npos);
  }
  // The chord leaving i must be matched by the chord at its far end
  // pointing back, or the spec describes a non-cubic multigraph.
  for (int i = 0; i < n; ++i) {
    int j = ((i + spec.chords[i % k]) % n + n) % n;
    int back = ((j + spec.chords[j % k]) % n + n) % n;
    if (back != i)
      throw LcfError("chord involution fails at vertex " + std::to_string(i),
                     std::string_view::npos);
  }
  return spec;
}

Graph graph_from_lcf(const LcfSpec& spec) {
  const int n = spec.n();
  const int k = static_cast<int>(spec.chords.size());
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    int next = (i + 1) % n;
    edges.insert({std::min(i, next), std::max(i, next)});
    int j = ((i + spec.chords[i % k]) % n + n) % n;
    edges.insert({std::min(i, j), std::max(i, j)});
  }
  return Graph(std::move(labels), {edges.begin(), edges.end()});
}

Graph graph_from_difference_set(const std::vector<int>& residues, int modulus) {
  if (modulus < 2) throw GraphError("modulus must be at least 2");
  if (residues.empty()) throw GraphError("empty residue set");
  std::set<int> rs;
  for (int r : residues) {
    if (r < 0 || r >= modulus) throw GraphError("residue out of range [0, m)");
    rs.insert(r);
  }
  std::vector<std::string> labels;
  for (int i = 0; i < modulus; ++i) labels.push_back("p" + std::to_string(i));
  for (int j = 0; j < modulus; ++j) labels.push_back("B" + std::to_string(j));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < modulus; ++i)
    for (int j = 0; j < modulus; ++j)
      if (rs.count(((i - j) % modulus + modulus) % modulus)) edges.push_back({i, modulus + j});
  return Graph(std::move(labels), edges);
}

namespace {

Graph build(std::vector<std::string> labels, std::vector<std::pair<std::string, std::string>> e) {
  Graph tmp(labels, {});
  std::vector<std::pair<int, int>> idx;
  for (auto& [u, v] : e) idx.push_back({tmp.require(u), tmp.require(v)});
  return Graph(std::move(labels), idx);
}

Graph heawood_graph() {
  // 14-cycle 1,a,2,b,3,c,4,d,5,e,6,f,7,g plus the seven crossing chords.
  std::vector<std::string> cyc = {"1", "a", "2", "b", "3", "c", "4",
                                  "d", "5", "e", "6", "f", "7", "g"};
  std::vector<std::pair<std::string, std::string>> e;
  for (size_t i = 0; i < cyc.size(); ++i) e.push_back({cyc[i], cyc[(i + 1) % cyc.size()]});
  e.insert(e.end(), {{"1", "c"}, {"2", "d"}, {"3", "e"}, {"4", "f"}, {"5", "g"},
                     {"6", "a"}, {"7", "b"}});
  return build(cyc, e);
}

}  // namespace

Graph catalog(std::string_view name) {
  if (name == "k2") return build({"1", "2"}, {{"1", "2"}});
  if (name == "k4")
    return build({"1", "2", "3", "4"},
                 {{"1", "2"}, {"1", "3"}, {"1", "4"}, {"2", "3"}, {"2", "4"}, {"3", "4"}});
  if (name == "k4_minus_e")
    return build({"1", "2", "3", "4"},
                 {{"1", "2"}, {"1", "3"}, {"2", "3"}, {"2", "4"}, {"3", "4"}});
  if (name == "k2_3")
    return build({"1", "2", "3", "4", "5"},
                 {{"1", "3"}, {"1", "4"}, {"1", "5"}, {"2", "3"}, {"2", "4"}, {"2", "5"}});
  if (name == "moser_spindle")
    return build({"1", "2", "3", "4", "5", "6", "7"},
                 {{"1", "2"}, {"1", "3"}, {"1", "4"}, {"1", "5"}, {"2", "4"}, {"3", "5"},
                  {"2", "6"}, {"4", "6"}, {"3", "7"}, {"5", "7"}, {"6", "7"}});
  if (name == "petersen")
    return build({"1", "2", "3", "4", "5", "a", "b", "c", "d", "e"},
                 {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "5"}, {"5", "1"},
                  {"a", "c"}, {"b", "d"}, {"c", "e"}, {"d", "a"}, {"e", "b"},
                  {"1", "a"}, {"2", "b"}, {"3", "c"}, {"4", "d"}, {"5", "e"}});
  if (name == "heawood") return heawood_graph();
  if (name == "heawood_minus_edge") return delete_edge(heawood_graph(), "1", "a");
  if (name == "heawood_minus_1a")
    return delete_vertex(delete_vertex(heawood_graph(), "1"), "a");
  if (name == "mobius_ladder_m4_subdivided") {
    // C8 rim u0..u7 plus a midpoint vertex on each of the four diameters.
    std::vector<std::string> labels;
    for (int i = 0; i < 8; ++i) labels.push_back("u" + std::to_string(i));
    for (int i = 0; i < 4; ++i) labels.push_back("m" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> e;
    for (int i = 0; i < 8; ++i)
      e.push_back({"u" + std::to_string(i), "u" + std::to_string((i + 1) % 8)});
    for (int i = 0; i < 4; ++i) {
      e.push_back({"u" + std::to_string(i), "m" + std::to_string(i)});
      e.push_back({"m" + std::to_string(i), "u" + std::to_string(i + 4)});
    }
    return build(labels, e);
  }
  throw GraphError("unknown catalog graph '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
  return {"k2",            "k4",
          "k4_minus_e",    "k2_3",
          "moser_spindle", "petersen",
          "heawood",       "heawood_minus_edge",
          "heawood_minus_1a", "mobius_ladder_m4_subdivided"};
}

Graph delete_vertex(const Graph& g, std::string_view label) {
  int del = g.require(label);
  std::vector<std::string> labels;
  std::vector<int> remap(g.vertex_count(), -1);
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (i == del) continue;
    remap[i] = static_cast<int>(labels.size());
    labels.push_back(g.label(i));
  }
  std::vector<std::pair<int, int>> edges;
  for (const Edge& e : g.edges())
    if (e.u != del && e.v != del) edges.push_back({remap[e.u], remap[e.v]});
  return Graph(std::move(labels), edges);
}

Graph delete_edge(const Graph& g, std::string_view u, std::string_view v) {
  int a = g.require(u), b = g.require(v);
  if (!g.has_edge(a, b))
    throw GraphError("no edge {" + std::string(u) + "," + std::string(v) + "}");
  std::vector<std::pair<int, int>> edges;
  for (const Edge& e : g.edges())
    if (!(e.u == std::min(a, b) && e.v == std::max(a, b))) edges.push_back({e.u, e.v});
  return Graph(g.labels(), edges);
}

std::optional<int> girth(const Graph& g) {
  const int n = g.vertex_count();
  int best = -1;
  // Shortest cycle through each start vertex via BFS; a non-tree edge at
  // depths (du, dv) closes a cycle of length du + dv + 1.
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1), parent(n, -1);
    std::deque<int> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : g.neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          q.push_back(v);
        } else if (v != parent[u] && dist[v] >= dist[u]) {
          int len = dist[u] + dist[v] + 1;
          if (best < 0 || len < best) best = len;
        }
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

bool is_bipartite(const Graph& g) {
  try {
    bipartition(g);
    return true;
  } catch (const GraphError&) {
    return false;
  }
}

std::vector<int> bipartition(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> color(n, -1);
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : g.neighbors(u)) {
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          q.push_back(v);
        } else if (color[v] == color[u]) {
          throw GraphError("graph is not bipartite");
        }
      }
    }
  }
  return color;
}

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> d;
  for (int i = 0; i < g.vertex_count(); ++i) d.push_back(g.degree(i));
  std::sort(d.rbegin(), d.rend());
  return d;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.push_back({});
    std::deque<int> q{s};
    comp[s] = id;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      out[id].push_back(u);
      for (int v : g.neighbors(u))
        if (comp[v] < 0) {
          comp[v] = id;
          q.push_back(v);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  return connected_components(g).size() == 1;
}

namespace {

// Iterated neighbor-degree refinement signatures; cheap invariants that cut
// the backtracking space to almost nothing at this scale.
std::vector<uint64_t> refinement_signature(const Graph& g, int rounds = 3) {
  const int n = g.vertex_count();
  std::vector<uint64_t> sig(n);
  for (int i = 0; i < n; ++i) sig[i] = static_cast<uint64_t>(g.degree(i));
  for (int r = 0; r < rounds; ++r) {
    std::vector<uint64_t> next(n);
    for (int i = 0; i < n; ++i) {
      std::vector<uint64_t> nb;
      for (int v : g.neighbors(i)) nb.push_back(sig[v]);
      std::sort(nb.begin(), nb.end());
      uint64_t h = sig[i] * 1099511628211ull + 14695981039346656037ull;
      for (uint64_t x : nb) h = (h ^ x) * 1099511628211ull;
      next[i] = h;
    }
    sig = next;
  }
  return sig;
}

bool extend_mapping(const Graph& a, const Graph& b, const std::vector<uint64_t>& sa,
                    const std::vector<uint64_t>& sb, std::vector<int>& map,
                    std::vector<char>& used, int depth) {
  const int n = a.vertex_count();
  if (depth == n) return true;
  for (int cand = 0; cand < n; ++cand) {
    if (used[cand] || sa[depth] != sb[cand]) continue;
    bool ok = true;
    for (int prev = 0; prev < depth && ok; ++prev)
      if (a.has_edge(depth, prev) != b.has_edge(cand, map[prev])) ok = false;
    if (!ok) continue;
    map[depth] = cand;
    used[cand] = 1;
    if (extend_mapping(a, b, sa, sb, map, used, depth + 1)) return true;
    used[cand] = 0;
  }
  return false;
}

}  // namespace

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  if (degree_sequence(a) != degree_sequence(b)) return false;
  auto sa = refinement_signature(a);
  auto sb = refinement_signature(b);
  {
    auto ca = sa, cb = sb;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) return false;
  }
  std::vector<int> map(a.vertex_count(), -1);
  std::vector<char> used(a.vertex_count(), 0);
  return extend_mapping(a, b, sa, sb, map, used, 0);
}

Graph parse_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::map<std::string, int> index;
  std::vector<std::pair<int, int>> edges;
  auto intern = [&](const std::string& tok) {
    auto it = index.find(tok);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(labels.size());
    labels.push_back(tok);
    index.emplace(tok, id);
    return id;
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string u, v, extra;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v) || (ls >> extra))
      throw GraphError("edge list line " + std::to_string(lineno) +
                       ": expected exactly two labels");
    edges.push_back({intern(u), intern(v)});
  }
  return Graph(std::move(labels), edges);
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  for (const Edge& e : g.edges()) out << g.label(e.u) << " " << g.label(e.v) << "\n";
  return out.str();
}

uint64_t graph_hash(const Graph& g) {
  std::vector<std::string> lines;
  for (const Edge& e : g.edges()) {
    std::string a = g.label(e.u), b = g.label(e.v);
    if (b < a) std::swap(a, b);
    lines.push_back(a + " " + b);
  }
  std::sort(lines.begin(), lines.end());
  uint64_t h = 14695981039346656037ull;
  for (const auto& l : lines) {
    for (char c : l) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    h = (h ^ '\n') * 1099511628211ull;
  }
  return h;
}

}  // namespace udg
