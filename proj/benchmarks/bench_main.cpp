#include <benchmark/benchmark.h>

#include "lshlab/ann_index.hpp"
#include "lshlab/binomial.hpp"
#include "lshlab/sampling.hpp"
#include "lshlab/spectral.hpp"

using namespace lshlab;

static void BM_FourierSpectrum(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  CounterRng rng(1);
  std::vector<Label> labels(std::size_t{1} << d);
  for (auto& l : labels) l = rng.below(8);
  const auto h = HashFunction::table(d, labels);
  for (auto _ : state) benchmark::DoNotOptimize(fourier_spectrum(h));
  state.SetComplexityN(static_cast<std::int64_t>(labels.size()));
}
BENCHMARK(BM_FourierSpectrum)->DenseRange(8, 16, 4)->Complexity(benchmark::oNLogN);

static void BM_BruteForceStability(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto h = HashFunction::parity(d, {0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_stability(h, 0.5));
}
BENCHMARK(BM_BruteForceStability)->DenseRange(6, 10, 2);

static void BM_McStability(benchmark::State& state) {
  const auto f = bit_sampling_family(128);
  for (auto _ : state) benchmark::DoNotOptimize(mc_stability(f, 0.9, 10000, 3));
}
BENCHMARK(BM_McStability)->Unit(benchmark::kMillisecond);

static void BM_BinomialTail(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(binomial_tail_above(n, 0.01, 0.012 * static_cast<double>(n)));
}
BENCHMARK(BM_BinomialTail)->RangeMultiplier(100)->Range(1000, 10000000);

namespace {

NNIndex planted_index(std::size_t n) {
  const auto prof = bit_sampling_profile(128, 8, 2);
  auto params = plan(n, prof, 0.1);
  return NNIndex::build(random_points(n, 128, 1), bit_sampling_family(128), params);
}

}  // namespace

static void BM_IndexBuild(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(planted_index(n));
}
BENCHMARK(BM_IndexBuild)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_IndexQuery(benchmark::State& state) {
  const auto index = planted_index(2000);
  auto queries = random_points(256, 128, 7);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(index.query(queries[i++ % queries.size()]));
}
BENCHMARK(BM_IndexQuery)->Unit(benchmark::kMicrosecond);
