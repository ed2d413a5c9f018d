#pragma once

#include <cstdint>

#include "rset/graph.hpp"

namespace rset {

// Deterministic generators; all randomness comes from the explicit 64-bit
// generator seed, so equal seeds give identical graphs.

// G(n, p) with a hard degree cap: candidate edges arrive in shuffled order
// and are kept while both endpoints stay below the cap.
Graph generate_gnp_capped(int n, double p, int max_degree, uint64_t seed);

// Approximately d-regular: d rounds of random pairings, conflicts dropped.
Graph generate_regular_ish(int n, int degree, uint64_t seed);

// hubs disjoint stars with `degree` leaves each; max degree = degree.
Graph generate_star_cluster(int hubs, int degree);

// rows x cols grid.
Graph generate_grid(int rows, int cols);

}  // namespace rset
