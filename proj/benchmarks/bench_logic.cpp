#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "inferkit/identities.hpp"
#include "inferkit/logic.hpp"
#include "inferkit/order.hpp"
#include "inferkit/parser.hpp"

namespace {

using namespace inferkit;

void BM_ModelsOfChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  const Space s = Space::binary(names);
  Formula f = Formula::atom(0, 0);
  for (std::size_t i = 1; i < n; ++i) f = implies(f, Formula::atom(i, 0) ^ Formula::atom(i - 1, 0));
  for (auto _ : state) benchmark::DoNotOptimize(models(s, f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.world_count()));
}
BENCHMARK(BM_ModelsOfChain)->DenseRange(4, 16, 4);

void BM_VerifyDistributivity(benchmark::State& state) {
  const Identity* id = find_identity("distributive-and");
  for (auto _ : state) benchmark::DoNotOptimize(verify_identity(*id, 3));
}
BENCHMARK(BM_VerifyDistributivity)->Unit(benchmark::kMillisecond);

void BM_TesseractOrder(benchmark::State& state) {
  const Space ab = Space::binary({"a", "b"});
  std::vector<Formula> fs;
  for (const auto& op : binary_operators()) fs.push_back(op.build(Formula::atom(0, 0), Formula::atom(1, 0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_order(ab, fs));
}
BENCHMARK(BM_TesseractOrder);

void BM_ParseFormula(benchmark::State& state) {
  const Space s = Space::binary({"a", "b", "c", "d"});
  const std::string text = "(a & !b) | (c -> d) <-> !(a ^ c) & (b !| d)";
  for (auto _ : state) benchmark::DoNotOptimize(parse_formula(text, s));
}
BENCHMARK(BM_ParseFormula);

}  // namespace

BENCHMARK_MAIN();
