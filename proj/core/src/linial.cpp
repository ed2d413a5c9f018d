#include "rset/linial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rset/errors.hpp"

namespace rset {

int smallest_prime_greater_than(int x) {
  int q = std::max(x + 1, 2);
  auto prime = [](int v) {
    for (int d = 2; d * d <= v; ++d)
      if (v % d == 0) return false;
    return true;
  };
  while (!prime(q)) ++q;
  return q;
}

LinialStep linial_step(int kappa, int delta) {
  if (delta < 1) throw InvalidInput("linial_step: max degree must be >= 1");
  if (kappa < 1) throw InvalidInput("linial_step: empty palette");
  int t = 1;
  if (kappa > delta + 1) {
    // smallest t with (delta+1)^t >= kappa, i.e. ceil(log kappa / log(delta+1))
    long long pw = delta + 1;
    t = 1;
    while (pw < kappa) {
      pw *= delta + 1;
      ++t;
    }
  }
  LinialStep s;
  s.t = t;
  s.q = smallest_prime_greater_than(delta * t);
  return s;
}

namespace {

// Base-q digits of c, least significant first; these are the polynomial
// coefficients, so p(x) = sum digits[i] * x^i mod q.
std::vector<int> digits_base_q(int c, int q) {
  std::vector<int> d;
  do {
    d.push_back(c % q);
    c /= q;
  } while (c > 0);
  return d;
}

int poly_eval_mod(const std::vector<int>& digits, int x, int q) {
  long long acc = 0;
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i)
    acc = (acc * x + digits[i]) % q;
  return static_cast<int>(acc);
}

}  // namespace

int linial_new_color(int own_color, const std::vector<int>& neighbor_colors,
                     const LinialStep& step) {
  const int q = step.q;
  std::vector<int> own = digits_base_q(own_color, q);
  std::vector<std::vector<int>> nbr;
  nbr.reserve(neighbor_colors.size());
  for (int c : neighbor_colors) nbr.push_back(digits_base_q(c, q));
  for (int x = 0; x < q; ++x) {
    int px = poly_eval_mod(own, x, q);
    bool clash = false;
    for (const auto& nd : nbr)
      if (poly_eval_mod(nd, x, q) == px) {
        clash = true;
        break;
      }
    if (!clash) return x * q + px;
  }
  // Distinct degree-<t polynomials over GF(q) with q > delta*t always leave
  // an uncovered evaluation point.
  throw std::logic_error("linial_new_color: no candidate survived");
}

Coloring linial_reduce(const Graph& g, const Coloring& col) {
  int delta = max_degree(g);
  if (delta < 1) throw InvalidInput("linial_reduce: graph has no edges");
  if (!validate_coloring(g, col))
    throw NotProper("linial_reduce: input coloring is not proper");
  LinialStep step = linial_step(col.palette_size, delta);
  std::vector<int> out(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> nc;
    nc.reserve(g.neighbors(v).size());
    for (int w : g.neighbors(v)) nc.push_back(col.color[w]);
    out[v] = linial_new_color(col.color[v], nc, step);
  }
  return Coloring::make(step.palette(), std::move(out));
}

Coloring compact_colors(const Graph& g, const Coloring& col) {
  if (static_cast<int>(col.color.size()) != g.vertex_count())
    throw InvalidInput("compact_colors: coloring size mismatch");
  std::vector<int> used = col.color;
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<int> out(col.color.size());
  for (size_t v = 0; v < col.color.size(); ++v)
    out[v] = static_cast<int>(
        std::lower_bound(used.begin(), used.end(), col.color[v]) - used.begin());
  int palette = std::max<int>(1, static_cast<int>(used.size()));
  return Coloring::make(palette, std::move(out));
}

FixpointColoring reduce_to_fixpoint(const Graph& g, const Coloring& col) {
  if (!validate_coloring(g, col))
    throw NotProper("reduce_to_fixpoint: input coloring is not proper");
  FixpointColoring fx;
  if (max_degree(g) == 0) {
    fx.coloring = Coloring::make(1, std::vector<int>(g.vertex_count(), 0));
    fx.palette_history.push_back(1);
    return fx;
  }
  Coloring cur = compact_colors(g, col);
  fx.palette_history.push_back(cur.palette_size);
  for (;;) {
    Coloring next = compact_colors(g, linial_reduce(g, cur));
    if (next.palette_size >= cur.palette_size) break;
    cur = std::move(next);
    ++fx.iterations;
    fx.palette_history.push_back(cur.palette_size);
  }
  fx.coloring = std::move(cur);
  return fx;
}

}  // namespace rset
