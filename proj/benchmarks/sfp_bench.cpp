// Microbenchmarks for the hot kernels plus one whole-pipeline run. All inputs
// are seeded procedural rasters so numbers are comparable across machines.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "sfp/frequency.hpp"
#include "sfp/fusion.hpp"
#include "sfp/image.hpp"
#include "sfp/numeric.hpp"
#include "sfp/pipeline.hpp"
#include "sfp/spatial.hpp"
#include "sfp/synthetic.hpp"

namespace {

sfp::ScalarMap random_map(int side, std::uint64_t seed) {
  sfp::ScalarMap m(side, side);
  for (double& v : m.values) v = sfp::rand_unit(seed);
  return m;
}

sfp::PlanarImage hazy_scene(int side) {
  sfp::CleanSceneParams params;
  params.width = side;
  params.height = side;
  const sfp::PlanarImage clean = sfp::make_clean_scene(params, 11);
  return sfp::synthesize_haze(clean, sfp::DepthProfile::kPerlin, 2.5, {0.92, 0.93, 0.95}, 12)
      .degraded;
}

void bm_fft2(benchmark::State& state) {
  const sfp::ScalarMap m = random_map(static_cast<int>(state.range(0)), 21);
  for (auto _ : state) benchmark::DoNotOptimize(sfp::fft2(m));
}
BENCHMARK(bm_fft2)->Arg(128)->Arg(256)->Arg(512);

void bm_guided_filter(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const sfp::ScalarMap p = random_map(side, 31);
  const sfp::ScalarMap guide = random_map(side, 32);
  for (auto _ : state) benchmark::DoNotOptimize(sfp::guided_filter(p, guide, 16, 1e-3));
}
BENCHMARK(bm_guided_filter)->Arg(128)->Arg(512);

void bm_spectral_direction(benchmark::State& state) {
  const sfp::PlanarImage img = hazy_scene(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sfp::spectral_direction(img, 7));
}
BENCHMARK(bm_spectral_direction)->Arg(128)->Arg(256);

void bm_dwt_haar(benchmark::State& state) {
  const sfp::ScalarMap m = random_map(static_cast<int>(state.range(0)), 41);
  for (auto _ : state) benchmark::DoNotOptimize(sfp::dwt_haar(m));
}
BENCHMARK(bm_dwt_haar)->Arg(256)->Arg(1024);

void bm_enhance(benchmark::State& state) {
  const sfp::PlanarImage img = hazy_scene(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sfp::enhance(img));
}
BENCHMARK(bm_enhance)->Arg(128)->Arg(256);

void bm_run_recovery(benchmark::State& state) {
  const sfp::PlanarImage img = hazy_scene(static_cast<int>(state.range(0)));
  const sfp::PipelineConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(sfp::run_recovery(img, config));
}
BENCHMARK(bm_run_recovery)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
