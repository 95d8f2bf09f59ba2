#include <benchmark/benchmark.h>

#include "trop/builtin.hpp"
#include "trop/normalization.hpp"

static void BM_ExampleNormalization(benchmark::State& state) {
  trop::FamilySpec fam = trop::example_family_3x3();
  for (auto _ : state) {
    auto norm = trop::build_normalization(fam);
    benchmark::DoNotOptimize(norm);
  }
}
BENCHMARK(BM_ExampleNormalization);

BENCHMARK_MAIN();
