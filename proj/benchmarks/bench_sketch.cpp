#include <benchmark/benchmark.h>

#include "rmusic/rng.hpp"
#include "rmusic/sketch.hpp"

namespace {

using rmusic::Complex;
using rmusic::Mat;
using rmusic::SketchConfig;

Mat random_complex(int rows, int cols, std::uint64_t seed) {
  rmusic::Engine eng(seed);
  Mat a(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) a(i, j) = Complex{eng.normal(), eng.normal()};
  return a;
}

void BM_CompositeApplyFactored(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int k = 9;
  const SketchConfig cfg = SketchConfig::theorem_scale_for(k, 3);
  const rmusic::CompositeSketch sx = rmusic::composite_sketch(cfg, m);
  const Mat a = random_complex(m, m, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(rmusic::apply_sketch_left(sx, a));
}
BENCHMARK(BM_CompositeApplyFactored)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_CompositeApplyMaterialized(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int k = 9;
  const SketchConfig cfg = SketchConfig::theorem_scale_for(k, 3);
  const rmusic::RealMat sx = rmusic::composite_sketch_real(cfg, m);
  const Mat a = random_complex(m, m, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(rmusic::real_left_product(sx, a));
}
BENCHMARK(BM_CompositeApplyMaterialized)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_CountSketchApply(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const rmusic::CountSketch sk = rmusic::count_sketch(m, 117, 11);
  const Mat a = random_complex(m, m, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(rmusic::apply_sketch_left(sk, a));
}
BENCHMARK(BM_CountSketchApply)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GaussianSketchGen(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(rmusic::gaussian_sketch_real(m, 18, 13));
}
BENCHMARK(BM_GaussianSketchGen)->Arg(400)->Arg(1000);

}  // namespace
