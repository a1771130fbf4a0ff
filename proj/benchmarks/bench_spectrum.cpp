#include <benchmark/benchmark.h>

#include "rmusic/array_sim.hpp"
#include "rmusic/spectrum.hpp"
#include "rmusic/subspace.hpp"

namespace {

using rmusic::AngularGrid;
using rmusic::Method;

struct DemoScene {
  rmusic::ArrayGeometry geom;
  rmusic::Mat basis;
  rmusic::PseudoSpectrum spectrum;
};

const DemoScene& demo_scene() {
  static const DemoScene s = [] {
    const int m = 300, k = 9;
    const rmusic::Scene scene =
        rmusic::make_random_scene(m, k, m, 10.0, -60.0, 60.0, 3.0, 21);
    const rmusic::CovarianceMatrix cov =
        rmusic::sample_covariance(rmusic::generate_snapshots(scene, 4));
    DemoScene out;
    out.geom = scene.array;
    out.basis = rmusic::exact_music_subspace(cov, k).signal.basis;
    out.spectrum = rmusic::spectrum_from_signal_basis(out.basis, AngularGrid{},
                                                      out.geom, Method::kMusicFull);
    return out;
  }();
  return s;
}

void BM_SignalSpectrumScan(benchmark::State& state) {
  const DemoScene& s = demo_scene();
  for (auto _ : state)
    benchmark::DoNotOptimize(rmusic::spectrum_from_signal_basis(
        s.basis, AngularGrid{}, s.geom, Method::kMusicFull));
}
BENCHMARK(BM_SignalSpectrumScan)->Unit(benchmark::kMillisecond);

void BM_FindPeaks(benchmark::State& state) {
  const DemoScene& s = demo_scene();
  for (auto _ : state) benchmark::DoNotOptimize(rmusic::find_peaks(s.spectrum, 9));
}
BENCHMARK(BM_FindPeaks);

void BM_SteeringMatrix(benchmark::State& state) {
  const DemoScene& s = demo_scene();
  const std::vector<double> angles = AngularGrid{}.angles();
  for (auto _ : state)
    benchmark::DoNotOptimize(rmusic::steering_matrix(s.geom, angles));
}
BENCHMARK(BM_SteeringMatrix)->Unit(benchmark::kMillisecond);

}  // namespace
