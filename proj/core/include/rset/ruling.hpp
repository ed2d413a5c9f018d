#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rset/derand.hpp"
#include "rset/graph.hpp"
#include "rset/sim.hpp"

namespace rset {

struct RulingConfig {
  SimMode mode = SimMode::MpcLinear;
  SamplerOptions sampler;
  std::optional<int> chunk_bits;       // default floor(log2 n), at least 1
  double degree_floor_const = 1.0;     // c_loop in max(16, ceil(log2^4 n) * c_loop)
  enum class Fallback { Gather, Sweep };
  Fallback fallback = Fallback::Gather;
  int memory_constant = 4;             // c in S = c * n * ceil(log2 n)
  std::optional<uint64_t> memory_words;
  int lenzen_rounds = 2;
};

uint64_t degree_floor(int n, double c_loop);

// Lexicographically-first MIS in ascending vertex id order.
VertexSet greedy_mis(const Graph& g);

struct IterationStats {
  int delta = 0;              // max active degree at loop entry
  uint64_t f = 1;
  uint64_t threshold = 1;
  int palette = 1;            // fixpoint palette fed to the hash domain
  int coloring_iterations = 0;
  int seed_bits = 0;
  int chunks = 0;
  int z_size = 0;
  uint64_t z_edges = 0;
  int h_size = 0;
  int i_size = 0;
  int rounds = 0;             // simulated rounds consumed by this iteration
  std::string expected_psi;   // exact E[psi], for the report
};

struct FallbackStats {
  std::string strategy;   // "gather" or "sweep"
  bool switched = false;  // gather requested but did not fit in S
  int mis_size = 0;
  int palette = 0;        // sweep only
  int rounds = 0;
};

struct FallbackResult {
  VertexSet mis;
  FallbackStats stats;
};

// MIS of a low-degree remainder graph: gather-and-greedy at the coordinator
// when it fits in S words, otherwise (or on request) a color-sweep that joins
// one color class per round.
FallbackResult fallback_mis(Simulator& sim, const Graph& g,
                            const std::vector<int>& machine_of_vertex,
                            const RulingConfig& cfg);

struct RulingSetResult {
  VertexSet ruling_set;
  int iterations = 0;
  std::vector<IterationStats> per_iteration;
  int initial_delta = 0;
  int final_delta = 0;       // max active degree when the loop exited
  uint64_t floor = 0;        // degree floor used
  FallbackStats fallback;
  int total_rounds = 0;
  SimTranscript transcript;
  std::vector<FixTrace> derand_traces;
  bool verified = false;
};

// The full deterministic 2-ruling set run inside the simulator.
RulingSetResult deterministic_two_ruling_set(const Graph& g,
                                             const RulingConfig& cfg);

// Upper bound on loop iterations implied by the degree collapse.
int iteration_cap(int initial_delta);

}  // namespace rset
