#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace udg {

class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& msg) : std::runtime_error(msg) {}
};

// Undirected edge, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Small labeled undirected graph. Labels are unique strings; edges are
// deduplicated and self-loops are rejected at construction.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int v) const { return labels_.at(v); }
  const std::vector<Edge>& edges() const { return edges_; }

  // -1 when the label is absent.
  int index_of(std::string_view label) const;
  // Throws GraphError naming the label when absent.
  int require(std::string_view label) const;

  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

// LCF description of a cubic Hamiltonian graph: chord offsets repeated
// around an n-cycle, n = chords.size() * repeat.
struct LcfSpec {
  std::vector<int> chords;
  int repeat = 0;
  int n() const { return static_cast<int>(chords.size()) * repeat; }
};

class LcfError : public std::runtime_error {
 public:
  LcfError(const std::string& msg, size_t position)
      : std::runtime_error(position == std::string_view::npos
                               ? msg
                               : msg + " at offset " + std::to_string(position)),
        position(position) {}
  size_t position;  // byte offset into the input text, npos for semantic errors
};

// Grammar: "(" int ("," int)* ")" "^" posint, square brackets also accepted.
// Rejects zero chords, |c| >= n, and chord maps that are not involutions.
LcfSpec parse_lcf(std::string_view text);

Graph graph_from_lcf(const LcfSpec& spec);

// Bipartite point-block incidence graph on 2m vertices: edge {p_i, B_j}
// iff (i - j) mod m is in residues.
Graph graph_from_difference_set(const std::vector<int>& residues, int modulus);

// Named small graphs: k4, k4_minus_e, k2_3, moser_spindle, petersen,
// heawood, heawood_minus_edge, heawood_minus_1a, mobius_ladder_m4_subdivided.
Graph catalog(std::string_view name);
std::vector<std::string> catalog_names();

Graph delete_vertex(const Graph& g, std::string_view label);
Graph delete_edge(const Graph& g, std::string_view u, std::string_view v);

// Exact combinatorial queries by exhaustive BFS; fine for n <= 20.
std::optional<int> girth(const Graph& g);  // nullopt for forests
bool is_bipartite(const Graph& g);
// Bipartition color per vertex (0/1); throws GraphError if not bipartite.
std::vector<int> bipartition(const Graph& g);
std::vector<int> degree_sequence(const Graph& g);  // sorted descending
bool is_connected(const Graph& g);
std::vector<std::vector<int>> connected_components(const Graph& g);

// Exact isomorphism by backtracking with degree/neighborhood refinement.
bool isomorphic(const Graph& a, const Graph& b);

// Edge-list text: one "u v" pair per line, '#' starts a comment.
Graph parse_edge_list(std::istream& in);
std::string write_edge_list(const Graph& g);

// FNV-1a over the canonical label-sorted edge list; used to key documents.
uint64_t graph_hash(const Graph& g);

}  // namespace udg
