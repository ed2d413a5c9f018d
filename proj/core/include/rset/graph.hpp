#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rset {

// Subset of vertex identifiers, kept sorted and duplicate-free.
struct VertexSet {
  std::vector<int> members;

  static VertexSet of(std::vector<int> ids);
  bool contains(int v) const;
  int size() const { return static_cast<int>(members.size()); }
};

// Immutable undirected simple graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;

  // Validates: ids in range, no self-loops, no duplicate edges.
  static Graph from_edges(int n, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int degree(int v) const;
  const std::vector<int>& neighbors(int v) const;
  // Edges as (u, v) with u < v, sorted lexicographically.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge(int u, int v) const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

// Proper coloring with values in [0, palette_size).
struct Coloring {
  int palette_size = 1;
  std::vector<int> color;

  static Coloring make(int palette_size, std::vector<int> color);
  // Identity coloring: vertex v gets color v, palette n (n >= 1 enforced by caller).
  static Coloring identity(int n);
};

int max_degree(const Graph& g);

// Induced subgraph plus the bijection from local ids back to parent ids.
// to_parent is ascending, so local id order equals parent id order.
struct InducedSubgraph {
  Graph graph;
  std::vector<int> to_parent;
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

bool validate_coloring(const Graph& g, const Coloring& col);

// First witness that u fails to be a 2-ruling set, if any.
struct TwoRulingViolation {
  enum Kind { NotIndependent, Unruled } kind;
  int u = -1;  // offending vertex
  int v = -1;  // adjacent set member for NotIndependent, else -1
};

std::optional<TwoRulingViolation> two_ruling_violation(const Graph& g,
                                                       const VertexSet& u);
bool is_two_ruling_set(const Graph& g, const VertexSet& u);

// --- edge-list text I/O ---------------------------------------------------
//
// One "u v" pair per line, whitespace separated, '#' starts a comment.
// A line with a single token declares an isolated vertex. Labels are
// arbitrary strings; they are remapped to 0..n-1 in order of first
// appearance and the original labels are retained for output.
struct LoadedGraph {
  Graph graph;
  std::vector<std::string> labels;  // dense id -> original label

  int id_of(const std::string& label) const;  // -1 when unknown
};

LoadedGraph load_edge_list(std::istream& in);
LoadedGraph load_edge_list_file(const std::string& path);
void save_edge_list(std::ostream& out, const Graph& g,
                    const std::vector<std::string>& labels);

// Set files: one vertex label per line, '#' comments.
VertexSet load_vertex_set(std::istream& in, const LoadedGraph& lg);
void save_vertex_set(std::ostream& out, const VertexSet& s,
                     const std::vector<std::string>& labels);

}  // namespace rset
