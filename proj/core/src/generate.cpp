#include "rset/generate.hpp"

#include <algorithm>
#include <random>

#include "rset/errors.hpp"

namespace rset {

Graph generate_gnp_capped(int n, double p, int max_degree, uint64_t seed) {
  if (n < 0) throw InvalidInput("gnp: negative n");
  if (p < 0.0 || p > 1.0) throw InvalidInput("gnp: p must be in [0,1]");
  if (max_degree < 0) throw InvalidInput("gnp: negative degree cap");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> candidates;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) candidates.emplace_back(u, v);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::vector<int> deg(n, 0);
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : candidates) {
    if (deg[u] >= max_degree || deg[v] >= max_degree) continue;
    ++deg[u];
    ++deg[v];
    edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph generate_regular_ish(int n, int degree, uint64_t seed) {
  if (n < 0) throw InvalidInput("regular-ish: negative n");
  if (degree < 0 || degree >= n)
    throw InvalidInput("regular-ish: degree must be in [0, n)");
  std::mt19937_64 rng(seed);
  std::vector<int> perm(n);
  std::vector<int> deg(n, 0);
  std::vector<std::pair<int, int>> edges;
  auto has = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
  };
  for (int round = 0; round < degree; ++round) {
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i + 1 < n; i += 2) {
      int u = perm[i], v = perm[i + 1];
      if (u == v || has(u, v) || deg[u] >= degree || deg[v] >= degree) continue;
      if (u > v) std::swap(u, v);
      edges.emplace_back(u, v);
      std::sort(edges.begin(), edges.end());
      ++deg[u];
      ++deg[v];
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph generate_star_cluster(int hubs, int degree) {
  if (hubs < 0 || degree < 0) throw InvalidInput("star-cluster: negative parameter");
  // hub h is vertex h; leaves follow after all hubs
  std::vector<std::pair<int, int>> edges;
  int next = hubs;
  for (int h = 0; h < hubs; ++h)
    for (int l = 0; l < degree; ++l) edges.emplace_back(h, next++);
  return Graph::from_edges(next, std::move(edges));
}

Graph generate_grid(int rows, int cols) {
  if (rows < 0 || cols < 0) throw InvalidInput("grid: negative dimension");
  auto id = [&](int r, int c) { return r * cols + c; };
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  return Graph::from_edges(rows * cols, std::move(edges));
}

}  // namespace rset
