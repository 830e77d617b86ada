#include <benchmark/benchmark.h>

#include "limitlab/combinators.hpp"
#include "limitlab/learners.hpp"

using namespace limitlab;

namespace {

void BM_CantorRoundtrip(benchmark::State& state) {
  Nat n = 0;
  for (auto _ : state) {
    auto [x, y] = cantor_unpair(n);
    benchmark::DoNotOptimize(cantor_pair(x, y));
    n = (n + 1) % 1000000;
  }
}
BENCHMARK(BM_CantorRoundtrip);

void BM_EnumAt(benchmark::State& state) {
  HypCode c = HypCode::union_of(HypCode::diff(HypCode::tail(0), {3, 5}),
                                HypCode::stride(3, 1, 10));
  for (auto _ : state) benchmark::DoNotOptimize(enum_at(c, state.range(0)));
}
BENCHMARK(BM_EnumAt)->Arg(64)->Arg(256)->Arg(1024);

void BM_SexprRoundtrip(benchmark::State& state) {
  HypCode c = pad(HypCode::union_of(HypCode::fin({1, 3, 8}),
                                    HypCode::above(HypCode::stride(2, 0, 0), 6)),
                  7);
  for (auto _ : state) benchmark::DoNotOptimize(HypCode::parse(c.to_string()));
}
BENCHMARK(BM_SexprRoundtrip);

void BM_TraceTailUnion(benchmark::State& state) {
  Target t = tail_target(3);
  TextPrefix text = seeded_text(t, 11, state.range(0));
  Learner m = tail_union_learner();
  for (auto _ : state) benchmark::DoNotOptimize(build_trace(m, text));
}
BENCHMARK(BM_TraceTailUnion)->Arg(200)->Arg(600);

void BM_TraceFinapproxWrapped(benchmark::State& state) {
  gold_class();
  Target t = initial_segment_target(4);
  TextPrefix text = canonical_text(t, state.range(0));
  Learner m = finapprox_part_wrap(urec_cons_part_learner(kGoldFamily));
  for (auto _ : state) benchmark::DoNotOptimize(build_trace(m, text));
}
BENCHMARK(BM_TraceFinapproxWrapped)->Arg(200)->Arg(600);

}  // namespace

BENCHMARK_MAIN();
