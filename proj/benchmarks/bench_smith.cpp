#include <random>

#include <benchmark/benchmark.h>

#include "prolim/smith.hpp"

namespace {

prolim::Matrix random_matrix(std::size_t n, long long bound, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> dist(-bound, bound);
  prolim::Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = dist(rng);
  }
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  const prolim::Matrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 9, 7);
  for (auto _ : state) benchmark::DoNotOptimize(prolim::smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(2)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_IntegerKernel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  prolim::Matrix m = random_matrix(n, 9, 11);
  for (std::size_t c = 0; c < n; ++c) m(n - 1, c) = m(0, c) + m(1, c);
  for (auto _ : state) benchmark::DoNotOptimize(prolim::integer_kernel(m));
}
BENCHMARK(BM_IntegerKernel)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
