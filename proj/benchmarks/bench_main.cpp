#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "noiselab/chain.hpp"
#include "noiselab/experiments.hpp"
#include "noiselab/flow.hpp"
#include "noiselab/walsh.hpp"

using namespace noiselab;

static void BM_WalshTransform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(std::size_t{1} << n);
  for (auto& v : values) v = dist(gen);
  const walsh::Observable f(n, std::move(values));
  for (auto _ : state) benchmark::DoNotOptimize(walsh::walsh_transform(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WalshTransform)->DenseRange(10, 20, 2);

static void BM_FlowLawG3(benchmark::State& state) {
  const auto gens = flow::standard_generators(flow::Model::G3, Rational(1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(flow::flow_law(gens, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FlowLawG3)->DenseRange(4, 16, 4)->Unit(benchmark::kMillisecond);

static void BM_Theorem79(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(web::theorem79_check(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Theorem79)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_G2Limit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(experiments::g2_limit_report(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_G2Limit)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
