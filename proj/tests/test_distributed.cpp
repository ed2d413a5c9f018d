#include <doctest.h>

#include <random>

#include "rset/distributed.hpp"
#include "rset/errors.hpp"
#include "rset/generate.hpp"
#include "rset/oracle.hpp"

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

SamplerParams params_for(const Coloring& col, int k, int b, int bout,
                         uint64_t threshold, u128 weight) {
  SamplerParams p;
  p.family = FamilyParams::make(k, FieldSpec::standard(b), bout, col.palette_size);
  p.f = uint64_t{1} << bout;
  p.degree_threshold = threshold;
  p.weight = weight;
  p.budget_log2 = 24;
  return p;
}

bool traces_equal(const FixTrace& a, const FixTrace& b) {
  if (a.r != b.r || a.root_sum != b.root_sum || a.chunks.size() != b.chunks.size())
    return false;
  for (size_t i = 0; i < a.chunks.size(); ++i) {
    if (a.chunks[i].sums != b.chunks[i].sums) return false;
    if (a.chunks[i].chosen != b.chunks[i].chosen) return false;
    if (a.chunks[i].bit_lo != b.chunks[i].bit_lo) return false;
    if (a.chunks[i].bit_hi != b.chunks[i].bit_hi) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("distributed_fix_seed is bit-identical to fix_seed in both modes") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 6; ++trial) {
    int n = 5 + static_cast<int>(rng() % 8);
    Graph g = generate_gnp_capped(n, 0.45, n, rng());
    Coloring col = greedy_proper(g);
    SamplerParams p = params_for(col, 2 + static_cast<int>(rng() % 2), 3,
                                 1, 2, u128{1} << 24);
    ChunkSchedule sched = ChunkSchedule::make(p.seed_bits(), 2);
    FixResult central = fix_seed(g, col, p, sched);

    for (SimMode mode : {SimMode::MpcLinear, SimMode::CongClique}) {
      Simulator sim(mode == SimMode::MpcLinear ? ModelConfig::mpc_linear(n)
                                               : ModelConfig::cong_clique(n));
      FixResult dist = distributed_fix_seed(sim, g, col, p, sched);
      CHECK(dist.seed.coefficients == central.seed.coefficients);
      CHECK(traces_equal(dist.trace, central.trace));
      CHECK(verify_monotone_trace(dist.trace));
      CHECK(verify_martingale(dist.trace));
      CHECK_FALSE(replay_violations(sim.transcript(), sim.config()).has_value());
    }
  }
}

TEST_CASE("exactly three rounds per chunk") {
  Graph g = generate_gnp_capped(5, 0.6, 5, 9);
  Coloring col = greedy_proper(g);
  SamplerParams p = params_for(col, 2, 3, 1, 2, u128{625});
  ChunkSchedule sched = ChunkSchedule::make(p.seed_bits(), 1);  // 6 chunks
  Simulator sim(ModelConfig::mpc_linear(5));
  distributed_fix_seed(sim, g, col, p, sched);
  CHECK(sim.transcript().total_rounds() == 3 * sched.chunks());
  // collect, aggregate, broadcast labels repeat per chunk
  for (const auto& r : sim.transcript().rounds) CHECK(r.label == "derand");
}

TEST_CASE("two candidates on a five-machine graph") {
  Graph g = generate_gnp_capped(5, 0.5, 5, 10);
  Coloring col = greedy_proper(g);
  SamplerParams p = params_for(col, 2, 3, 1, 2, u128{625});
  ChunkSchedule sched = ChunkSchedule::make(p.seed_bits(), 1);
  Simulator sim(ModelConfig::mpc_linear(5));
  distributed_fix_seed(sim, g, col, p, sched);
  // each chunk: candidates 0 and 1 aggregate, machine 0 leads, 3 rounds
  const auto& rounds = sim.transcript().rounds;
  REQUIRE(rounds.size() >= 3);
  // collect: every machine ships to the candidate it does not own
  for (auto [m, w] : rounds[0].received) CHECK(m <= 1);
  // aggregate: only candidate 1 sends to the leader
  REQUIRE(rounds[1].sent.size() == 1);
  CHECK(rounds[1].sent[0].first == 1);
  CHECK(rounds[1].received[0].first == 0);
  // broadcast: the leader reaches all four other machines
  REQUIRE(rounds[2].sent.size() == 1);
  CHECK(rounds[2].sent[0] == std::pair<int, uint64_t>{0, 4});
}

TEST_CASE("chunk wider than the machine pool overflows") {
  Graph g = generate_gnp_capped(4, 0.5, 4, 2);
  Coloring col = greedy_proper(g);
  SamplerParams p = params_for(col, 2, 3, 1, 2, u128{256});
  ChunkSchedule sched = ChunkSchedule::make(p.seed_bits(), 3);  // 8 candidates
  Simulator sim(ModelConfig::mpc_linear(4));
  CHECK_THROWS_AS(distributed_fix_seed(sim, g, col, p, sched),
                  CandidateOverflow);
}

TEST_CASE("distributed run works with vertices mapped onto larger machine pools") {
  // 4-vertex active subgraph living on machines {2, 5, 7, 8} of a 10-machine sim
  Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  Coloring col = greedy_proper(g);
  SamplerParams p = params_for(col, 2, 2, 1, 2, u128{10000});
  ChunkSchedule sched = ChunkSchedule::make(p.seed_bits(), 2);
  FixResult central = fix_seed(g, col, p, sched);
  Simulator sim(ModelConfig::mpc_linear(10));
  FixResult dist =
      distributed_fix_seed(sim, g, {2, 5, 7, 8}, col, p, sched);
  CHECK(dist.seed.coefficients == central.seed.coefficients);
  CHECK(traces_equal(dist.trace, central.trace));
}
