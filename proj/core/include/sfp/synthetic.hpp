#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sfp/frequency.hpp"
#include "sfp/image.hpp"

namespace sfp {

enum class DepthProfile { kLinearRamp, kRadial, kPerlin };

// Forward-model scene: degraded = clean .* t + A .* (1 - t), with the
// ground-truth transmission kept for scoring.
struct SyntheticScene {
  PlanarImage clean;
  PlanarImage degraded;
  ScalarMap t_gt;
  double beta_s = 0.0;
  std::array<double, 3> airlight{};
  std::uint64_t seed = 0;
  DepthProfile profile = DepthProfile::kLinearRamp;
};

// Procedural clean-image generator (seeded value noise, several octaves),
// used by the synthetic corpora. Channel values span roughly [lo, hi].
struct CleanSceneParams {
  int width = 128;
  int height = 128;
  double lo = 0.05;
  double hi = 0.45;
  int octaves = 4;
};

PlanarImage make_clean_scene(const CleanSceneParams& params, std::uint64_t seed);

// Depth in [0,1] from the chosen profile, then t = exp(-beta_s * d).
// Requires beta_s > 0 and every airlight component in (0,1].
SyntheticScene synthesize_haze(const PlanarImage& clean, DepthProfile profile, double beta_s,
                               const std::array<double, 3>& airlight, std::uint64_t seed);

// Mean of squared differences. Throws DimensionError on mismatched maps.
double transmission_mse(const ScalarMap& t_est, const ScalarMap& t_gt);

// Per-pair statistic behind the DC-prior figure: |DC_clean,C - mu_degraded|
// for each channel, where mu_degraded is the mean of the degraded image's
// three channel DCs.
struct DcDiffRow {
  int pair = 0;
  std::array<double, 3> diff{};
};
std::vector<DcDiffRow> dc_difference_stats(
    const std::vector<std::pair<PlanarImage, PlanarImage>>& degraded_clean_pairs);

// Per-image low-radial-frequency share, one value per channel.
struct RadialRow {
  int image = 0;
  std::array<double, 3> phi{};
};
std::vector<RadialRow> radial_stats(const std::vector<PlanarImage>& images,
                                    RhoNorm norm = RhoNorm::kAxis);

// Deterministic corpora used by the statistics harness and the acceptance
// checks. Each scene pairs a procedural clean image with one hazy rendering;
// parameters cycle through the documented ranges as a function of the index.
struct CorpusSpec {
  int scenes = 20;
  int side = 128;
  std::uint64_t seed = 7;
};

// Dark-leaning scenes with moderate-to-dense haze and near-achromatic
// airlight; the regime where transmission priors are compared.
std::vector<SyntheticScene> transmission_corpus(const CorpusSpec& spec);

// Brighter scenes with lighter haze and exactly achromatic airlight; the
// regime behind the DC-difference statistic.
std::vector<SyntheticScene> dc_statistics_corpus(const CorpusSpec& spec);

}  // namespace sfp
