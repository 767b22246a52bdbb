#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "inferkit/correlation.hpp"

namespace {

using namespace inferkit;

BeliefWeb random_bits(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("b" + std::to_string(i));
  const Space s = Space::binary(names);
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(s.world_count());
  for (auto& v : w) v = u(rng);
  return BeliefWeb::normalized(s, w);
}

void BM_TotalCorrelation(benchmark::State& state) {
  const BeliefWeb w = random_bits(static_cast<std::size_t>(state.range(0)));
  const Split split = unit_split(w.space());
  for (auto _ : state) benchmark::DoNotOptimize(total_correlation(w, split));
}
BENCHMARK(BM_TotalCorrelation)->DenseRange(4, 16, 4);

void BM_EntropyForm(benchmark::State& state) {
  const BeliefWeb w = random_bits(static_cast<std::size_t>(state.range(0)));
  const Split split = unit_split(w.space());
  for (auto _ : state) benchmark::DoNotOptimize(total_correlation_entropy_form(w, split));
}
BENCHMARK(BM_EntropyForm)->DenseRange(4, 16, 4);

void BM_SplitInvariance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BeliefWeb w = random_bits(n);
  const Split split = unit_split(w.space());
  const BlockRelabeling flip(n, std::vector<std::uint64_t>{1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(split_invariance_check(w, split, flip));
}
BENCHMARK(BM_SplitInvariance)->DenseRange(4, 12, 4);

}  // namespace

BENCHMARK_MAIN();
