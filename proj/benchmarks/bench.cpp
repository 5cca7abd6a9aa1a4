#include "bll/borcherds.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace bll;

namespace {

// enumeration benchmarks bypass the count cache by materializing vectors;
// pipeline benchmarks clear it so every iteration does the full walk
void clear_cache(benchmark::State& state) {
  state.PauseTiming();
  global_shell_cache().clear();
  state.ResumeTiming();
}

IMat random_symmetric(int n, unsigned seed) {
  std::mt19937 rng(seed);
  IMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      long long v = static_cast<long long>(rng() % 19) - 9;
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  return m;
}

void BM_RootShell_E8(benchmark::State& state) {
  Lattice e8 = make_E8();
  for (auto _ : state)
    benchmark::DoNotOptimize(vectors_of_norm(e8, Rat(-2)).count);
}
BENCHMARK(BM_RootShell_E8);

void BM_DeepShell_E8(benchmark::State& state) {
  Lattice e8 = make_E8();
  for (auto _ : state)
    benchmark::DoNotOptimize(vectors_of_norm(e8, Rat(-8)).count);
}
BENCHMARK(BM_DeepShell_E8);

void BM_Histogram_E7(benchmark::State& state) {
  Lattice e7 = make_E7();
  for (auto _ : state) {
    clear_cache(state);
    benchmark::DoNotOptimize(norm_histogram(e7, Rat(-30)).size());
  }
}
BENCHMARK(BM_Histogram_E7)->Unit(benchmark::kMillisecond);

void BM_Hnf_8x8(benchmark::State& state) {
  IMat m = random_symmetric(8, 12021);
  for (auto _ : state) benchmark::DoNotOptimize(hnf_columns(m).h.rows);
}
BENCHMARK(BM_Hnf_8x8);

void BM_Snf_8x8(benchmark::State& state) {
  IMat m = random_symmetric(8, 12022);
  for (auto _ : state) benchmark::DoNotOptimize(snf(m).d.rows);
}
BENCHMARK(BM_Snf_8x8);

void BM_ComplementReport_g6(benchmark::State& state) {
  QVec v{Rat(3), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
  for (auto _ : state) {
    clear_cache(state);
    benchmark::DoNotOptimize(quasi_pullback(6, v).r);
  }
}
BENCHMARK(BM_ComplementReport_g6)->Unit(benchmark::kMillisecond);

void BM_FullTable(benchmark::State& state) {
  for (auto _ : state) {
    clear_cache(state);
    benchmark::DoNotOptimize(reference_table().size());
  }
}
BENCHMARK(BM_FullTable)->Unit(benchmark::kMillisecond);

void BM_Search_g6(benchmark::State& state) {
  for (auto _ : state) {
    clear_cache(state);
    benchmark::DoNotOptimize(
        search_v(6, SearchObjective::minimize_roots).classes.size());
  }
}
BENCHMARK(BM_Search_g6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
