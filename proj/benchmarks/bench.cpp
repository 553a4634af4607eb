#include <benchmark/benchmark.h>

#include <string>

#include "pla/aggregators/pseudometric.hpp"
#include "pla/eliminate/eliminate.hpp"
#include "pla/io/files.hpp"
#include "pla/logic/evaluator.hpp"
#include "pla/logic/parser.hpp"
#include "pla/network/inference.hpp"

namespace {

using namespace pla;

PlaNetwork net(const char* name) { return load_network(std::string(PLA_BENCH_DATA_DIR) + "/" + name); }

void BM_SampleMixed(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PlaNetwork mixed = net("mixed.json");
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(mixed, n, ++seed));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleMixed)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_EvaluateAverage(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PlaNetwork mixed = net("mixed.json");
  const Structure world = sample(mixed, n, 1);
  const CompiledFormula cf(*parse_formula("am[E(x,y) & Q(y) : y : distinct]"), mixed.signature(), {"x"});
  const std::vector<Element> at{1};
  for (auto _ : state) benchmark::DoNotOptimize(cf.evaluate(world, at));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateAverage)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_ExactDistribution(benchmark::State& state) {
  const PlaNetwork pr = net("pr.json");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_distribution(pr, n));
}
BENCHMARK(BM_ExactDistribution)->DenseRange(2, 8, 2);

void BM_Eliminate(benchmark::State& state) {
  const PlaNetwork mixed = net("mixed.json");
  const auto phi = parse_formula("max[am[E(y,z) : z : distinct] : y : y=y] & gm[E(x,y) | Q(y) : y : distinct]");
  for (auto _ : state) benchmark::DoNotOptimize(eliminate(mixed, *phi));
}
BENCHMARK(BM_Eliminate);

void BM_L1Unordered(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  Sequence r(m), rho(m + 1);
  for (std::size_t i = 0; i < m; ++i) r[i] = static_cast<double>(i % 7) / 7.0;
  for (std::size_t i = 0; i <= m; ++i) rho[i] = static_cast<double>(i % 5) / 5.0;
  for (auto _ : state) benchmark::DoNotOptimize(mu(MetricKind::L1Unordered, r, rho));
}
BENCHMARK(BM_L1Unordered)->RangeMultiplier(8)->Range(8, 4096);

}  // namespace
BENCHMARK_MAIN();
