#include <benchmark/benchmark.h>

#include "rset/gf2.hpp"
#include "rset/kwise.hpp"

using namespace rset;

static void BM_FieldMul(benchmark::State& state) {
  FieldSpec f = FieldSpec::standard(static_cast<int>(state.range(0)));
  uint32_t a = 3, b = 5;
  for (auto _ : state) {
    a = field_mul(f, a, b) | 1;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul)->Arg(6)->Arg(12)->Arg(32);

static void BM_MulTableLookup(benchmark::State& state) {
  FieldSpec f = FieldSpec::standard(8);
  MulTable t(f);
  uint32_t a = 3, b = 5;
  for (auto _ : state) {
    a = t.mul(a, b) | 1;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_MulTableLookup);

static void BM_Evaluate(benchmark::State& state) {
  FamilyParams p = FamilyParams::make(static_cast<int>(state.range(0)),
                                      FieldSpec::standard(8), 2, 200);
  Seed s = Seed::from_bits(p, 0x2f5a1ull & ((uint64_t{1} << p.seed_bits()) - 1));
  uint32_t x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(p, s, x));
    x = (x + 1) % 200;
  }
}
BENCHMARK(BM_Evaluate)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
