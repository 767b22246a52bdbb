#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "inferkit/maxent.hpp"

namespace {

using namespace inferkit;

// Uniform prior over n cells with `k` smooth moment constraints taken from a
// tilted reference, so every target is interior.
struct Problem {
  BeliefWeb prior;
  ConstraintSet constraints;
};

Problem moments(std::size_t n, std::size_t k) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  const Space s({{"x", labels}});
  std::vector<double> ref(n);
  for (std::size_t i = 0; i < n; ++i) ref[i] = std::exp(-0.5 * std::pow((double(i) / double(n) - 0.3) * 4.0, 2));
  const BeliefWeb reference = BeliefWeb::normalized(s, ref);
  ConstraintSet cs;
  for (std::size_t j = 1; j <= k; ++j) {
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = std::pow(double(i) / double(n), double(j));
    cs.push_back(ExpectationConstraint{row, expected_value(reference, row)});
  }
  return {BeliefWeb::uniform(s), std::move(cs)};
}

void BM_UpdateMoments(benchmark::State& state) {
  const Problem p = moments(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(update(p.prior, p.constraints));
}
BENCHMARK(BM_UpdateMoments)->ArgsProduct({{64, 1024, 16384}, {1, 3}});

void BM_DieUpdate(benchmark::State& state) {
  const Space die({{"face", {"1", "2", "3", "4", "5", "6"}}});
  const BeliefWeb u = BeliefWeb::uniform(die);
  const ConstraintSet cs = {ExpectationConstraint{{1, 2, 3, 4, 5, 6}, 4.5}};
  for (auto _ : state) benchmark::DoNotOptimize(update(u, cs));
}
BENCHMARK(BM_DieUpdate);

void BM_BayesViaMaxent(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  const Space s({{"theta", labels}, {"x", labels}});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w(s.world_count());
  for (auto& v : w) v = u(rng);
  const BeliefWeb prior = BeliefWeb::normalized(s, w);
  for (auto _ : state) benchmark::DoNotOptimize(bayes_via_maxent(prior, BlockIndex{1}, {0}));
}
BENCHMARK(BM_BayesViaMaxent)->RangeMultiplier(4)->Range(4, 256);

}  // namespace

BENCHMARK_MAIN();
