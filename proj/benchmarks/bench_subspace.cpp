#include <benchmark/benchmark.h>

#include <map>
#include <utility>

#include "rmusic/array_sim.hpp"
#include "rmusic/subspace.hpp"

namespace {

using rmusic::CovarianceMatrix;
using rmusic::SketchConfig;

// One covariance per (m, k), shared across iterations and benchmarks so the
// timed loop bodies measure only the factorizations.
const CovarianceMatrix& covariance_for(int m, int k) {
  static std::map<std::pair<int, int>, CovarianceMatrix> cache;
  const auto key = std::make_pair(m, k);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const rmusic::Scene scene =
        rmusic::make_random_scene(m, k, m, 10.0, -60.0, 60.0, 3.0, 42);
    it = cache.emplace(key, rmusic::sample_covariance(
                                rmusic::generate_snapshots(scene, 7)))
             .first;
  }
  return it->second;
}

void BM_RandomizedSubspace(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const CovarianceMatrix& cov = covariance_for(m, k);
  const SketchConfig cfg = SketchConfig::defaults_for(k, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(rmusic::rmusic_subspace(cov, k, cfg));
}
BENCHMARK(BM_RandomizedSubspace)
    ->Args({200, 9})
    ->Args({400, 9})
    ->Args({700, 9})
    ->Args({1000, 9})
    ->Args({700, 5})
    ->Args({700, 30})
    ->Unit(benchmark::kMillisecond);

void BM_FullSvdSubspace(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int k = 9;
  const CovarianceMatrix& cov = covariance_for(m, k);
  for (auto _ : state)
    benchmark::DoNotOptimize(rmusic::exact_music_subspace(cov, k));
}
BENCHMARK(BM_FullSvdSubspace)
    ->Arg(200)
    ->Arg(400)
    ->Arg(700)
    ->Unit(benchmark::kMillisecond);

void BM_KrylovSubspace(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const CovarianceMatrix& cov = covariance_for(m, k);
  for (auto _ : state)
    benchmark::DoNotOptimize(rmusic::exact_ksvd_subspace(cov, k));
}
BENCHMARK(BM_KrylovSubspace)
    ->Args({700, 5})
    ->Args({700, 30})
    ->Unit(benchmark::kMillisecond);

void BM_PropagatorSubspace(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int k = 9;
  const CovarianceMatrix& cov = covariance_for(m, k);
  for (auto _ : state)
    benchmark::DoNotOptimize(rmusic::propagator_subspace(cov, k));
}
BENCHMARK(BM_PropagatorSubspace)->Arg(200)->Arg(700)->Unit(benchmark::kMillisecond);

void BM_InverseWeights(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const CovarianceMatrix& cov = covariance_for(m, 9);
  for (auto _ : state)
    benchmark::DoNotOptimize(rmusic::inverse_spectrum_weights(cov));
}
BENCHMARK(BM_InverseWeights)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_SampleCovariance(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const rmusic::Scene scene =
      rmusic::make_random_scene(m, 9, m, 10.0, -60.0, 60.0, 3.0, 42);
  const rmusic::Mat y = rmusic::generate_snapshots(scene, 7);
  for (auto _ : state) benchmark::DoNotOptimize(rmusic::sample_covariance(y));
}
BENCHMARK(BM_SampleCovariance)->Arg(200)->Arg(700)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
