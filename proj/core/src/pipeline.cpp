#include "sfp/pipeline.hpp"

#include <chrono>

#include "sfp/metrics.hpp"

namespace sfp {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

PipelineResult run_recovery(const PlanarImage& img, const PipelineConfig& config) {
  require_min_size(img.width, img.height, "run_recovery");
  const auto t0 = std::chrono::steady_clock::now();

  PipelineResult result;
  result.report.uciqe_input = uciqe(img);

  // Spatial arm: transmission from the spectral direction, then inversion.
  auto stage = std::chrono::steady_clock::now();
  if (config.no_sdp) {
    result.restored = img;
  } else {
    const DirectionField dir = spectral_direction(img, config.patch_radius);
    TransmissionMap t = estimate_transmission(img, dir);
    const Atmosphere a = estimate_atmospheric_light(img, t);
    result.restored = invert_asm(img, t, a, config.gf_radius, config.gf_eps);
    result.report.atmosphere = a.rgb;
    result.report.t_min = t.t_min;
    double lo = t.values.values[0];
    double sum = 0.0;
    for (double v : t.values.values) {
      lo = std::min(lo, v);
      sum += v;
    }
    result.report.t_raw_min = lo;
    result.report.t_mean = sum / static_cast<double>(t.values.values.size());
    result.transmission = std::move(t.values);
  }
  result.report.ms_sdp = ms_since(stage);

  // Frequency arm.
  stage = std::chrono::steady_clock::now();
  if (config.no_fdp) {
    result.enhanced = img;
  } else {
    FdpOptions opts;
    opts.rho_norm = config.rho_norm;
    opts.target_phi = config.target_phi;
    opts.bounds = {config.beta_lo, config.beta_hi};
    EnhanceResult enhanced = enhance(img, opts);
    result.enhanced = std::move(enhanced.image);
    result.report.fdp = enhanced.params;
  }
  result.report.ms_fdp = ms_since(stage);

  // Fusion + post-processing.
  stage = std::chrono::steady_clock::now();
  FuseOptions fuse_opts;
  fuse_opts.naive_average = config.naive_fusion;
  fuse_opts.skip_postprocess = config.no_pp;
  FuseInfo info;
  result.output = fuse(img, result.restored, result.enhanced, fuse_opts, &info);
  result.report.weights = info.weights;
  result.report.post = info.post;
  result.report.ms_fusion = ms_since(stage);

  result.report.uciqe_output = uciqe(result.output);
  result.report.ms_total = ms_since(t0);
  return result;
}

}  // namespace sfp
