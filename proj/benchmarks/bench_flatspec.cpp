#include <benchmark/benchmark.h>

#include "flatspec/lattice_enum.hpp"
#include "flatspec/reconstruct.hpp"
#include "flatspec/weyl.hpp"

using namespace flatspec;

static void BM_ShortVectors(benchmark::State& state) {
  const auto gram = RatMatrix::identity(static_cast<int>(state.range(0)));
  const Rational bound(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_short_vectors(gram, bound));
}
BENCHMARK(BM_ShortVectors)->Args({3, 10})->Args({4, 10})->Args({4, 25});

static void BM_WeightMultiset(benchmark::State& state) {
  const int a = static_cast<int>(state.range(0));
  for (auto _ : state) {
    clear_weight_cache();
    benchmark::DoNotOptimize(so_weight_multiset(7, {a, a / 2, 0}).size());
  }
}
BENCHMARK(BM_WeightMultiset)->Arg(2)->Arg(4)->Arg(6);

static void BM_OracleSetup(benchmark::State& state) {
  const auto group = find_preset("hantzsche-wendt");
  ComputeOptions options;
  options.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(SpectrumOracle(group, Rational(40), options).shell_sizes().size());
}
BENCHMARK(BM_OracleSetup)->Arg(1)->Arg(4)->UseRealTime();

static void BM_Reconstruct(benchmark::State& state) {
  const OracleProvider provider(find_preset("diag4-z2xz2"), Rational(10));
  for (auto _ : state)
    benchmark::DoNotOptimize(reconstruct_multiplicities(provider, 3, Rational(10)).continuous_part.size());
}
BENCHMARK(BM_Reconstruct)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
