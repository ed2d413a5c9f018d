#pragma once

#include <vector>

#include "rset/derand.hpp"
#include "rset/sim.hpp"

namespace rset {

// Runs the chunk-fixing scheme as node programs inside the simulator:
// every machine participates; machines hosting a graph vertex contribute the
// exact conditional sums of their incident-edge and bad-vertex indicators,
// machine y aggregates candidate value y, machine 0 is the leader that picks
// the minimizer and broadcasts it. Exactly 3 charged rounds per chunk.
//
// machine_of_vertex maps graph vertex ids to machine ids (identity when the
// whole graph is active). The returned seed and trace are bit-identical to
// fix_seed on the same inputs.
FixResult distributed_fix_seed(Simulator& sim, const Graph& g,
                               const std::vector<int>& machine_of_vertex,
                               const Coloring& col, const SamplerParams& params,
                               const ChunkSchedule& schedule);

// Whole-graph convenience overload: vertex v lives on machine v.
FixResult distributed_fix_seed(Simulator& sim, const Graph& g,
                               const Coloring& col, const SamplerParams& params,
                               const ChunkSchedule& schedule);

}  // namespace rset
