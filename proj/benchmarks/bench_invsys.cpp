#include <benchmark/benchmark.h>

#include "prolim/classify.hpp"
#include "prolim/homalg.hpp"
#include "prolim/invsys.hpp"

namespace {

using namespace prolim;

// Z^n under the shift-and-double map, a system with a nontrivial
// eventual image at every rank.
InverseSystem shift_system(std::size_t n) {
  const FgAbGroup g = FgAbGroup::free(n);
  Matrix m(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1;
  m(n - 1, 0) = 2;
  return InverseSystem::constant(g, GroupHom(g, g, m));
}

InverseSystem cyclic_tower(long long base) {
  const FgAbGroup zero;
  Tower t;
  t.base = base;
  return InverseSystem::periodic({}, {zero}, {GroupHom::identity(zero)}, {t});
}

void BM_Surjectivize(benchmark::State& state) {
  const InverseSystem s = shift_system(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(surjectivize(s));
}
BENCHMARK(BM_Surjectivize)->Arg(1)->Arg(2)->Arg(4)->Arg(6);

void BM_ClassifyShift(benchmark::State& state) {
  const InverseSystem s = shift_system(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify_limit(s));
}
BENCHMARK(BM_ClassifyShift)->Arg(1)->Arg(2)->Arg(4)->Arg(6);

void BM_ClassifyTower(benchmark::State& state) {
  const InverseSystem s = cyclic_tower(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classify_limit(s));
}
BENCHMARK(BM_ClassifyTower)->Arg(2)->Arg(3)->Arg(10);

void BM_Lim1Verdict(benchmark::State& state) {
  const InverseSystem s = shift_system(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lim1_verdict(s));
}
BENCHMARK(BM_Lim1Verdict)->Arg(1)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
