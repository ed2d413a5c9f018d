#include <doctest.h>

#include <random>
#include <sstream>

#include "rset/errors.hpp"
#include "rset/graph.hpp"
#include "rset/ruling.hpp"

using namespace rset;

namespace {

Graph path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, std::move(e));
}

Graph star(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, std::move(e));
}

Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return Graph::from_edges(n, std::move(e));
}

}  // namespace

TEST_CASE("max_degree") {
  CHECK(max_degree(Graph::from_edges(3, {})) == 0);
  CHECK(max_degree(Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}})) == 2);
  CHECK(max_degree(star(4)) == 4);
}

TEST_CASE("graph construction rejects bad input") {
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), InvalidInput);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}, {1, 0}}), InvalidInput);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), InvalidVertex);
}

TEST_CASE("induced_subgraph basics") {
  Graph tri = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  auto sub = induced_subgraph(tri, VertexSet::of({0, 1}));
  CHECK(sub.graph.vertex_count() == 2);
  CHECK(sub.graph.edge_count() == 1);
  CHECK(sub.to_parent == std::vector<int>{0, 1});

  CHECK(induced_subgraph(tri, VertexSet::of({})).graph.vertex_count() == 0);

  auto ends = induced_subgraph(path(3), VertexSet::of({0, 2}));
  CHECK(ends.graph.vertex_count() == 2);
  CHECK(ends.graph.edge_count() == 0);

  CHECK_THROWS_AS(induced_subgraph(tri, VertexSet::of({3})), InvalidVertex);
}

TEST_CASE("induced_subgraph composes") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_graph(10, 0.4, rng);
    std::vector<int> a, b;
    for (int v = 0; v < 10; ++v) {
      if (rng() & 1) a.push_back(v);
      if (rng() & 1) b.push_back(v);
    }
    auto ga = induced_subgraph(g, VertexSet::of(a));
    // B expressed in original ids, restricted to A, then remapped into ga.
    std::vector<int> b_in_a;
    for (int i = 0; i < ga.graph.vertex_count(); ++i)
      if (std::binary_search(b.begin(), b.end(), ga.to_parent[i]))
        b_in_a.push_back(i);
    auto gab = induced_subgraph(ga.graph, VertexSet::of(b_in_a));
    std::vector<int> ab;
    for (int v : a)
      if (std::binary_search(b.begin(), b.end(), v)) ab.push_back(v);
    auto gboth = induced_subgraph(g, VertexSet::of(ab));
    CHECK(gab.graph.vertex_count() == gboth.graph.vertex_count());
    CHECK(gab.graph.edges() == gboth.graph.edges());
  }
}

TEST_CASE("validate_coloring") {
  Graph e1 = Graph::from_edges(2, {{0, 1}});
  CHECK(validate_coloring(e1, Coloring::make(2, {0, 1})));
  CHECK_FALSE(validate_coloring(e1, Coloring::make(6, {5, 5})));
  CHECK(validate_coloring(Graph::from_edges(3, {}), Coloring::make(1, {0, 0, 0})));
  CHECK_THROWS_AS(validate_coloring(e1, Coloring::make(1, {0})), InvalidInput);
}

TEST_CASE("coloring properness is monotone under induced subgraphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = random_graph(12, 0.3, rng);
    Coloring id = Coloring::identity(12);
    std::vector<int> keep;
    for (int v = 0; v < 12; ++v)
      if (rng() & 1) keep.push_back(v);
    auto sub = induced_subgraph(g, VertexSet::of(keep));
    std::vector<int> c;
    for (int v : sub.to_parent) c.push_back(id.color[v]);
    CHECK(validate_coloring(sub.graph, Coloring::make(id.palette_size, c)));
  }
}

TEST_CASE("is_two_ruling_set") {
  CHECK(is_two_ruling_set(star(3), VertexSet::of({0})));
  CHECK(is_two_ruling_set(star(3), VertexSet::of({1})));
  Graph p5 = path(5);
  CHECK_FALSE(is_two_ruling_set(p5, VertexSet::of({0})));
  auto v = two_ruling_violation(p5, VertexSet::of({0}));
  REQUIRE(v.has_value());
  CHECK(v->kind == TwoRulingViolation::Unruled);
  CHECK(v->u == 4);

  auto bad = two_ruling_violation(Graph::from_edges(2, {{0, 1}}),
                                  VertexSet::of({0, 1}));
  REQUIRE(bad.has_value());
  CHECK(bad->kind == TwoRulingViolation::NotIndependent);
}

TEST_CASE("an MIS is always a 2-ruling set") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    Graph g = random_graph(3 + static_cast<int>(rng() % 14), 0.3, rng);
    CHECK(is_two_ruling_set(g, greedy_mis(g)));
  }
}

TEST_CASE("edge list round trip with labels") {
  std::istringstream in(
      "# comment\n"
      "a b\n"
      "b c   # trailing\n"
      "a b\n"  // duplicate tolerated
      "lonely\n"
      "\n");
  LoadedGraph lg = load_edge_list(in);
  CHECK(lg.graph.vertex_count() == 4);
  CHECK(lg.graph.edge_count() == 2);
  CHECK(lg.labels == std::vector<std::string>{"a", "b", "c", "lonely"});
  CHECK(lg.graph.degree(lg.id_of("lonely")) == 0);

  std::ostringstream out;
  save_edge_list(out, lg.graph, lg.labels);
  std::istringstream in2(out.str());
  LoadedGraph lg2 = load_edge_list(in2);
  CHECK(lg2.graph.edges() == lg.graph.edges());

  std::istringstream self("x x\n");
  CHECK_THROWS_AS(load_edge_list(self), ParseError);
  std::istringstream wide("x y z\n");
  CHECK_THROWS_AS(load_edge_list(wide), ParseError);
}

TEST_CASE("set file uses graph labels") {
  std::istringstream in("a b\nb c\n");
  LoadedGraph lg = load_edge_list(in);
  std::istringstream sf("c\na\n");
  VertexSet s = load_vertex_set(sf, lg);
  CHECK(s.members == std::vector<int>{0, 2});
  std::istringstream bad("zzz\n");
  CHECK_THROWS_AS(load_vertex_set(bad, lg), ParseError);
}
