#pragma once

#include <array>

#include "sfp/image.hpp"

namespace sfp {

// Softmax weights over the three fusion sources (order I, J, E) for the a and
// b channels. Each triple sums to 1.
struct FusionWeights {
  std::array<double, 3> a{};
  std::array<double, 3> b{};
};

// One-level orthonormal Haar split. Odd inputs are replicate-padded to even;
// the original size is kept so the inverse can crop exactly.
struct WaveletBands {
  int orig_width = 0;
  int orig_height = 0;
  ScalarMap ll, lh, hl, hh;  // each ceil(H/2) x ceil(W/2)
};

struct PostprocessInfo {
  double gamma = 1.0;
  double white_point = 1.0;
};

struct FuseInfo {
  FusionWeights weights;
  PostprocessInfo post;
  bool naive_average = false;
  bool postprocess_skipped = false;
};

struct FuseOptions {
  bool naive_average = false;  // mean of I,J,E in RGB instead of Lab fusion
  bool skip_postprocess = false;
};

// w_s = exp(-|m_s|) / sum over sources, per channel. means_* are (a, b).
FusionWeights fusion_weights(const std::array<double, 2>& means_I,
                             const std::array<double, 2>& means_J,
                             const std::array<double, 2>& means_E);

// Pixelwise weighted sum of the a and b planes, weights from the plane means.
// Returns the weights actually used via *out_weights when non-null.
void fuse_ab(const LabImage& I, const LabImage& J, const LabImage& E, ScalarMap& a_out,
             ScalarMap& b_out, FusionWeights* out_weights = nullptr);

WaveletBands dwt_haar(const ScalarMap& plane);
ScalarMap idwt_haar(const WaveletBands& bands);

// One-level Haar fusion of the L planes: LL from J, each high-band
// coefficient taken from the source with the largest |value| (sign kept,
// ties broken in I, J, E order), inverse transform, clamp to [0,100].
ScalarMap fuse_l(const ScalarMap& I_l, const ScalarMap& J_l, const ScalarMap& E_l);

// (1) adaptive gamma: g = clamp(log(0.5)/log(mean luminance + 1e-6), 0.5, 2.5)
//     applied per channel as s^g;
// (2) Reinhard-style compression s' = s*(1 + s/w^2)/(1 + s) with white point
//     w = 0.98 quantile of the post-gamma luminance (floored at 1e-6);
// then clamp to [0,1].
PlanarImage postprocess(const PlanarImage& img, PostprocessInfo* info = nullptr);

// Lab-convert the three sources, fuse a/b by weighted sum and L through the
// wavelet rule, convert back, postprocess. Options switch in the naive RGB
// average (ablation) or skip postprocessing.
PlanarImage fuse(const PlanarImage& I, const PlanarImage& J, const PlanarImage& E,
                 const FuseOptions& opts = {}, FuseInfo* info = nullptr);

}  // namespace sfp
