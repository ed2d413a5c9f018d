#include <doctest.h>

#include <random>

#include "rset/errors.hpp"
#include "rset/generate.hpp"
#include "rset/linial.hpp"

using namespace rset;

namespace {

Coloring greedy_proper(const Graph& g) {
  std::vector<int> color(g.vertex_count(), -1);
  int palette = 1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<char> used(g.vertex_count() + 1, 0);
    for (int w : g.neighbors(v))
      if (color[w] >= 0) used[color[w]] = 1;
    int c = 0;
    while (used[c]) ++c;
    color[v] = c;
    palette = std::max(palette, c + 1);
  }
  return Coloring::make(palette, std::move(color));
}

}  // namespace

TEST_CASE("linial_step parameters") {
  // kappa = 3, delta = 2: one digit, q = smallest prime > 2
  LinialStep s = linial_step(3, 2);
  CHECK(s.t == 1);
  CHECK(s.q == 3);
  // kappa = 2, delta = 1: q = smallest prime > 1 is 2
  LinialStep s2 = linial_step(2, 1);
  CHECK(s2.t == 1);
  CHECK(s2.q == 2);
  // kappa = 256, delta = 4: t = ceil(log 256 / log 5) = 4, q = 17
  LinialStep s3 = linial_step(256, 4);
  CHECK(s3.t == 4);
  CHECK(s3.q == 17);
  CHECK(smallest_prime_greater_than(16) == 17);
  CHECK(smallest_prime_greater_than(1) == 2);
}

TEST_CASE("isolated vertex picks candidate (0, p(0))") {
  // path 0-1-2 plus isolated 3; palette 3 so t = 1 and q = 3
  Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}});
  Coloring col = Coloring::make(3, {0, 1, 2, 0});
  Coloring out = linial_reduce(g, col);
  CHECK(out.palette_size == 9);
  CHECK(out.color[3] == 0);  // x = 0, p(0) = 0 encoded as 0*q + 0
  CHECK(validate_coloring(g, out));
}

TEST_CASE("single edge with colors 0,1") {
  Graph g = Graph::from_edges(2, {{0, 1}});
  Coloring col = Coloring::make(2, {0, 1});
  Coloring out = linial_reduce(g, col);
  CHECK(out.palette_size == 4);  // q = 2
  CHECK(out.color[0] == 0);      // constant polys never clash; both pick x=0
  CHECK(out.color[1] == 1);
  CHECK(validate_coloring(g, out));
}

TEST_CASE("linial_reduce output is always proper with palette q^2") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 4 + static_cast<int>(rng() % 30);
    Graph g = generate_gnp_capped(n, 0.3, n, rng());
    if (max_degree(g) < 1) continue;
    Coloring col = trial % 2 == 0 ? Coloring::identity(n) : greedy_proper(g);
    LinialStep step = linial_step(col.palette_size, max_degree(g));
    Coloring out = linial_reduce(g, col);
    CHECK(validate_coloring(g, out));
    CHECK(out.palette_size == step.q * step.q);
  }
}

TEST_CASE("new colors are a function of local data only") {
  std::mt19937_64 rng(37);
  Graph g = generate_gnp_capped(20, 0.25, 20, 99);
  Coloring col = Coloring::identity(20);
  LinialStep step = linial_step(col.palette_size, max_degree(g));
  Coloring out = linial_reduce(g, col);
  for (int v = 0; v < 20; ++v) {
    std::vector<int> nbr;
    for (int w : g.neighbors(v)) nbr.push_back(col.color[w]);
    std::shuffle(nbr.begin(), nbr.end(), rng);  // multiset, order-free
    CHECK(linial_new_color(col.color[v], nbr, step) == out.color[v]);
  }
}

TEST_CASE("linial_reduce rejects improper colorings and edgeless graphs") {
  Graph g = Graph::from_edges(2, {{0, 1}});
  CHECK_THROWS_AS(linial_reduce(g, Coloring::make(2, {1, 1})), NotProper);
  CHECK_THROWS_AS(linial_reduce(Graph::from_edges(2, {}), Coloring::identity(2)),
                  InvalidInput);
}

TEST_CASE("reduce_to_fixpoint basics") {
  // already-minimal palette stays put
  Graph tri = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  FixpointColoring fx = reduce_to_fixpoint(tri, Coloring::make(3, {0, 1, 2}));
  CHECK(fx.coloring.palette_size == 3);
  CHECK(validate_coloring(tri, fx.coloring));

  // edgeless graphs collapse to one color
  FixpointColoring fe = reduce_to_fixpoint(Graph::from_edges(4, {}),
                                           Coloring::identity(4));
  CHECK(fe.coloring.palette_size == 1);

  // palettes never increase along the history
  Graph g = generate_gnp_capped(40, 0.2, 40, 3);
  FixpointColoring fg = reduce_to_fixpoint(g, Coloring::identity(40));
  CHECK(validate_coloring(g, fg.coloring));
  for (size_t i = 1; i < fg.palette_history.size(); ++i)
    CHECK(fg.palette_history[i] < fg.palette_history[i - 1]);
  CHECK(fg.coloring.palette_size <= 40);
}

TEST_CASE("fixpoint palette on a degree-4 graph with 256 vertices") {
  // a 4-regular-ish circulant on 256 vertices
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < 256; ++v) {
    e.emplace_back(v, (v + 1) % 256);
    e.emplace_back(v, (v + 7) % 256);
  }
  Graph g = Graph::from_edges(256, std::move(e));
  CHECK(max_degree(g) == 4);
  FixpointColoring fx = reduce_to_fixpoint(g, Coloring::identity(256));
  CHECK(validate_coloring(g, fx.coloring));
  // The iteration with compaction lands far below the one-shot q^2 = 289.
  CHECK(fx.coloring.palette_size <= 25);
}

TEST_CASE("compact_colors relabels densely preserving properness") {
  Graph g = Graph::from_edges(3, {{0, 1}});
  Coloring sparse = Coloring::make(100, {7, 93, 93});
  Coloring dense = compact_colors(g, sparse);
  CHECK(dense.palette_size == 2);
  CHECK(dense.color == std::vector<int>{0, 1, 1});
}
