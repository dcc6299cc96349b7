#include <benchmark/benchmark.h>

#include "ebit/measures.hpp"
#include "ebit/sampling.hpp"
#include "ebit/search.hpp"

namespace {

void BM_HaarState(benchmark::State& state) {
  ebit::Rng rng(1);
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(ebit::haar_random_state(d, d, rng));
}
BENCHMARK(BM_HaarState)->Arg(2)->Arg(4);

void BM_Analyze(benchmark::State& state) {
  ebit::Rng rng(2);
  const int d = static_cast<int>(state.range(0));
  const auto ens = ebit::random_ensemble(d, d, 4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ebit::analyze(ens));
}
BENCHMARK(BM_Analyze)->Arg(2)->Arg(4);

void BM_SweepTrial(benchmark::State& state) {
  ebit::SampleConfig cfg{3, 3, 4, 1, 7};
  for (auto _ : state) {
    cfg.seed++;
    benchmark::DoNotOptimize(ebit::sweep(cfg));
  }
}
BENCHMARK(BM_SweepTrial);

void BM_SearchStep(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ebit::search(ebit::Objective::kRateBound, 2, 2, 2, 100, seed++));
}
BENCHMARK(BM_SearchStep);

}  // namespace
