#pragma once

#include "rset/derand.hpp"
#include "rset/graph.hpp"
#include "rset/int128.hpp"
#include "rset/kwise.hpp"

namespace rset {

// Brute-force oracles. These deliberately avoid the engine's term grouping,
// Horner evaluation and closed forms: every quantity is recomputed from the
// definition by enumerating the full seed space.

enum class Statistic { SampledEdges, BadCount, UncoveredCount, Psi };

// Exact average of the statistic over all 2^r seeds.
Dyadic enumerate_expectation(const Graph& g, const Coloring& col,
                             const SamplerParams& params, Statistic stat);

// True iff normalized conditional expectations never increase along the trace
// and every chunk's chosen candidate attains the minimum (ties to the
// smallest value). Malformed traces throw InvalidTrace.
bool verify_monotone_trace(const FixTrace& trace);

// True iff at every chunk the candidate sums add up exactly to the parent's
// chosen sum (the root sum for chunk 0).
bool verify_martingale(const FixTrace& trace);

// True iff every subset of <= level distinct domain points has an exactly
// uniform joint bucket law under a uniform seed. level defaults to params.k.
bool verify_kwise(const FamilyParams& params, int level = -1);

}  // namespace rset
