#include "rset/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "rset/errors.hpp"

namespace rset {

VertexSet VertexSet::of(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return VertexSet{std::move(ids)};
}

bool VertexSet::contains(int v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw InvalidInput("vertex count must be nonnegative");
  Graph g;
  g.n_ = n;
  g.adj_.resize(n);
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InvalidVertex("edge endpoint out of range");
    if (u == v) throw InvalidInput("self-loop rejected");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw InvalidInput("duplicate edge rejected");
  for (auto [u, v] : edges) {
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& a : g.adj_) std::sort(a.begin(), a.end());
  g.edges_ = std::move(edges);
  return g;
}

int Graph::degree(int v) const {
  if (v < 0 || v >= n_) throw InvalidVertex("degree: vertex out of range");
  return static_cast<int>(adj_[v].size());
}

const std::vector<int>& Graph::neighbors(int v) const {
  if (v < 0 || v >= n_) throw InvalidVertex("neighbors: vertex out of range");
  return adj_[v];
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

Coloring Coloring::make(int palette_size, std::vector<int> color) {
  if (palette_size < 1) throw InvalidInput("palette_size must be positive");
  for (int c : color)
    if (c < 0 || c >= palette_size)
      throw InvalidInput("color value outside palette");
  return Coloring{palette_size, std::move(color)};
}

Coloring Coloring::identity(int n) {
  std::vector<int> c(n);
  for (int v = 0; v < n; ++v) c[v] = v;
  return Coloring{std::max(n, 1), std::move(c)};
}

int max_degree(const Graph& g) {
  int d = 0;
  for (int v = 0; v < g.vertex_count(); ++v) d = std::max(d, g.degree(v));
  return d;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  std::vector<int> local(g.vertex_count(), -1);
  for (int i = 0; i < s.size(); ++i) {
    int v = s.members[i];
    if (v < 0 || v >= g.vertex_count())
      throw InvalidVertex("induced_subgraph: member out of range");
    local[v] = i;
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges())
    if (local[u] >= 0 && local[v] >= 0) edges.emplace_back(local[u], local[v]);
  InducedSubgraph out;
  out.graph = Graph::from_edges(s.size(), std::move(edges));
  out.to_parent = s.members;
  return out;
}

bool validate_coloring(const Graph& g, const Coloring& col) {
  if (static_cast<int>(col.color.size()) != g.vertex_count())
    throw InvalidInput("coloring size does not match graph");
  for (auto [u, v] : g.edges())
    if (col.color[u] == col.color[v]) return false;
  return true;
}

std::optional<TwoRulingViolation> two_ruling_violation(const Graph& g,
                                                       const VertexSet& u) {
  std::vector<char> in_set(g.vertex_count(), 0);
  for (int v : u.members) {
    if (v < 0 || v >= g.vertex_count())
      throw InvalidVertex("two_ruling_violation: member out of range");
    in_set[v] = 1;
  }
  for (int v : u.members)
    for (int w : g.neighbors(v))
      if (in_set[w] && w > v)
        return TwoRulingViolation{TwoRulingViolation::NotIndependent, v, w};
  // Multi-source BFS from the set; the reported violator is the vertex
  // farthest from the set (smallest id on ties).
  const int inf = g.vertex_count() + 1;
  std::vector<int> dist(g.vertex_count(), inf);
  std::vector<int> frontier;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (in_set[v]) {
      dist[v] = 0;
      frontier.push_back(v);
    }
  int level = 0;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int v : frontier)
      for (int w : g.neighbors(v))
        if (dist[w] == inf) {
          dist[w] = level + 1;
          next.push_back(w);
        }
    frontier = std::move(next);
    ++level;
  }
  int worst = -1;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (dist[v] > 2 && (worst < 0 || dist[v] > dist[worst])) worst = v;
  if (worst >= 0)
    return TwoRulingViolation{TwoRulingViolation::Unruled, worst, -1};
  return std::nullopt;
}

bool is_two_ruling_set(const Graph& g, const VertexSet& u) {
  return !two_ruling_violation(g, u).has_value();
}

// --- text formats ----------------------------------------------------------

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

int LoadedGraph::id_of(const std::string& label) const {
  for (int i = 0; i < static_cast<int>(labels.size()); ++i)
    if (labels[i] == label) return i;
  return -1;
}

LoadedGraph load_edge_list(std::istream& in) {
  std::unordered_map<std::string, int> id;
  std::vector<std::string> labels;
  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = id.emplace(tok, static_cast<int>(labels.size()));
    if (inserted) labels.push_back(tok);
    return it->second;
  };
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(strip_comment(line));
    std::string a, b, extra;
    if (!(ls >> a)) continue;  // blank
    if (!(ls >> b)) {
      intern(a);  // isolated vertex declaration
      continue;
    }
    if (ls >> extra)
      throw ParseError("edge list line " + std::to_string(lineno) +
                       ": expected at most two tokens");
    int u = intern(a), v = intern(b);
    if (u == v)
      throw ParseError("edge list line " + std::to_string(lineno) +
                       ": self-loop '" + a + "'");
    edges.emplace_back(u, v);
  }
  // Duplicate lines are tolerated on load; the Graph invariant stays strict.
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  LoadedGraph out;
  out.graph = Graph::from_edges(static_cast<int>(labels.size()), std::move(edges));
  out.labels = std::move(labels);
  return out;
}

LoadedGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  return load_edge_list(in);
}

void save_edge_list(std::ostream& out, const Graph& g,
                    const std::vector<std::string>& labels) {
  auto name = [&](int v) {
    return v < static_cast<int>(labels.size()) ? labels[v] : std::to_string(v);
  };
  std::vector<char> touched(g.vertex_count(), 0);
  for (auto [u, v] : g.edges()) {
    touched[u] = touched[v] = 1;
    out << name(u) << ' ' << name(v) << '\n';
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!touched[v]) out << name(v) << '\n';
}

VertexSet load_vertex_set(std::istream& in, const LoadedGraph& lg) {
  std::unordered_map<std::string, int> id;
  for (int i = 0; i < static_cast<int>(lg.labels.size()); ++i)
    id.emplace(lg.labels[i], i);
  std::vector<int> members;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(strip_comment(line));
    std::string tok;
    while (ls >> tok) {
      auto it = id.find(tok);
      if (it == id.end())
        throw ParseError("set file line " + std::to_string(lineno) +
                         ": unknown vertex '" + tok + "'");
      members.push_back(it->second);
    }
  }
  return VertexSet::of(std::move(members));
}

void save_vertex_set(std::ostream& out, const VertexSet& s,
                     const std::vector<std::string>& labels) {
  for (int v : s.members) {
    if (v < static_cast<int>(labels.size()))
      out << labels[v] << '\n';
    else
      out << v << '\n';
  }
}

}  // namespace rset
