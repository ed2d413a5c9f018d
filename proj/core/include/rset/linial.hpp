#pragma once

#include <vector>

#include "rset/graph.hpp"

namespace rset {

// Parameters of one color-reduction round: colors are read as base-q digit
// vectors, i.e. polynomials over GF(q), and the new color is the pair
// (x, p(x)) encoded as x*q + p(x) for the smallest non-conflicting x.
struct LinialStep {
  int t = 1;       // max(1, ceil(log kappa / log(delta+1)))
  int q = 2;       // smallest prime > delta * t
  int palette() const { return q * q; }
};

LinialStep linial_step(int kappa, int delta);
int smallest_prime_greater_than(int x);

// New color of one vertex from purely local data: its own color and its
// neighbors' colors. This is the one-round locality contract.
int linial_new_color(int own_color, const std::vector<int>& neighbor_colors,
                     const LinialStep& step);

// One reduction round over the whole graph. Requires a proper input coloring
// and max degree >= 1; output is proper with palette q^2.
Coloring linial_reduce(const Graph& g, const Coloring& col);

// Dense relabel of the used colors (ascending old value). Never grows the
// palette; output palette = number of used colors (>= 1).
Coloring compact_colors(const Graph& g, const Coloring& col);

struct FixpointColoring {
  Coloring coloring;
  int iterations = 0;                // linial_reduce rounds applied
  std::vector<int> palette_history;  // compacted palette after each stage
};

// Iterates compaction + reduction until the compacted palette stops
// shrinking. Edgeless graphs collapse to a single color directly.
FixpointColoring reduce_to_fixpoint(const Graph& g, const Coloring& col);

}  // namespace rset
