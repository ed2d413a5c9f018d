#include <benchmark/benchmark.h>

#include "rset/derand.hpp"
#include "rset/generate.hpp"
#include "rset/linial.hpp"
#include "rset/ruling.hpp"

using namespace rset;

namespace {

struct Instance {
  Graph g;
  Coloring col;
  SamplerParams params;
};

Instance make_instance(int hubs, int degree, int k) {
  Instance in{generate_star_cluster(hubs, degree), Coloring::identity(1), {}};
  in.col = reduce_to_fixpoint(in.g, Coloring::identity(in.g.vertex_count()))
               .coloring;
  SamplerOptions opts;
  opts.k_override = k;
  in.params = select_parameters(in.g.vertex_count(), max_degree(in.g), opts,
                                in.col.palette_size);
  return in;
}

}  // namespace

static void BM_ConditionalPsiRoot(benchmark::State& state) {
  Instance in = make_instance(3, static_cast<int>(state.range(0)), 3);
  PsiEvaluator ev(in.g, in.col, in.params);
  Seed root = Seed::empty(in.params.family);
  for (auto _ : state) benchmark::DoNotOptimize(ev.psi_sum(root));
}
BENCHMARK(BM_ConditionalPsiRoot)->Arg(16)->Arg(24)->Arg(32);

static void BM_FixSeed(benchmark::State& state) {
  Instance in = make_instance(3, static_cast<int>(state.range(0)), 3);
  ChunkSchedule sched = ChunkSchedule::make(in.params.seed_bits(), 6);
  for (auto _ : state)
    benchmark::DoNotOptimize(fix_seed(in.g, in.col, in.params, sched));
}
BENCHMARK(BM_FixSeed)->Arg(16)->Arg(24);

static void BM_EndToEnd(benchmark::State& state) {
  Graph g = generate_star_cluster(3, static_cast<int>(state.range(0)));
  RulingConfig cfg;
  cfg.degree_floor_const = 0.0;
  cfg.sampler.k_override = 3;
  for (auto _ : state)
    benchmark::DoNotOptimize(deterministic_two_ruling_set(g, cfg));
}
BENCHMARK(BM_EndToEnd)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_FallbackGrid(benchmark::State& state) {
  Graph g = generate_grid(16, 16);
  RulingConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(deterministic_two_ruling_set(g, cfg));
}
BENCHMARK(BM_FallbackGrid)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
