#pragma once

#include <array>
#include <string>

#include "sfp/frequency.hpp"
#include "sfp/fusion.hpp"
#include "sfp/image.hpp"
#include "sfp/spatial.hpp"

namespace sfp {

struct PipelineConfig {
  int patch_radius = 7;
  int gf_radius = 16;
  double gf_eps = 1e-3;
  RhoNorm rho_norm = RhoNorm::kAxis;
  double beta_lo = 1e-4;
  double beta_hi = 0.75;
  double target_phi = 0.01;
  bool no_sdp = false;
  bool no_fdp = false;
  bool naive_fusion = false;
  bool no_pp = false;
  bool night = false;  // reserved; daytime-equivalent path
  bool emit_intermediate = false;
  int threads = 0;  // 0 = hardware concurrency
};

// Everything the per-image JSON report carries, minus the serialization.
struct RecoveryReport {
  std::string input;
  std::array<double, 3> atmosphere{};
  double t_raw_min = 0.0;
  double t_mean = 0.0;
  double t_min = 0.0;  // floor used during inversion
  FdpParams fdp;
  FusionWeights weights;
  PostprocessInfo post;
  double uciqe_input = 0.0;
  double uciqe_output = 0.0;
  double ms_sdp = 0.0;
  double ms_fdp = 0.0;
  double ms_fusion = 0.0;
  double ms_total = 0.0;
};

struct PipelineResult {
  PlanarImage output;
  PlanarImage restored;     // J (spatial arm); = input when no_sdp
  PlanarImage enhanced;     // E (frequency arm); = input when no_fdp
  ScalarMap transmission;   // raw t before refinement; empty when no_sdp
  RecoveryReport report;
};

// Full pipeline: spatial restoration (unless no_sdp), frequency enhancement
// (unless no_fdp), fusion + postprocess per the ablation flags.
PipelineResult run_recovery(const PlanarImage& img, const PipelineConfig& config);

}  // namespace sfp
