#pragma once

#include <array>

#include "sfp/image.hpp"

namespace sfp {

// Per-pixel unit 3-vector field describing which channels carry the local
// gradient energy. all_fallback is set when every patch was flat and the
// uniform direction (1,1,1)/sqrt(3) was substituted everywhere.
struct DirectionField {
  int width = 0;
  int height = 0;
  std::array<ScalarMap, 3> v;
  bool all_fallback = false;
};

struct TransmissionMap {
  ScalarMap values;    // clamped to [0,1]
  double t_min = 0.0;  // mean of the lowest 5% of values, floored at 0.01
};

struct Atmosphere {
  std::array<double, 3> rgb{0.0, 0.0, 0.0};  // each component in [0.05, 1]
};

// Direction of local color variation: at every pixel of the (2r+1)^2 patch
// the per-channel gradient-magnitude triple (|grad R|, |grad G|, |grad B|) is
// normalized to unit length, the normalized triples are averaged over the
// patch, and the average is re-normalized. Gradients are central differences
// with replicate borders; triples with norm < 1e-12 contribute the fallback
// (1,1,1)/sqrt(3).
DirectionField spectral_direction(const PlanarImage& img, int patch_radius);

// Projects 1 - I(x) onto S(x): p = <S, 1-I>, t = p * (S_R + S_G + S_B) / 3,
// clamped to [0,1]. t_min = mean of the lowest 5% of the clamped values
// (before any smoothing), floored at 0.01.
TransmissionMap estimate_transmission(const PlanarImage& img, const DirectionField& S);

// Average color over the ceil(0.001*H*W) pixels with the lowest transmission
// (ties broken row-major), each channel clamped to [0.05, 1].
Atmosphere estimate_atmospheric_light(const PlanarImage& img, const TransmissionMap& t);

// He et al. guided filter: q = mean(a) .* guide + mean(b) with
// a = cov(guide, p) / (var(guide) + eps), b = mean(p) - a * mean(guide).
// Box means run over full (2r+1)^2 windows with edge-replicated borders.
ScalarMap guided_filter(const ScalarMap& p, const ScalarMap& guide, int radius, double eps);

// Scene radiance via the scattering model. t is refined by guided_filter
// (guide = Rec.709 luminance of img), the denominator is clamped below by
// t.t_min, and the result is clamped to [0,1]:
//   J = clamp((I - A) / max(GF(t), t_min) + A)
PlanarImage invert_asm(const PlanarImage& img, const TransmissionMap& t, const Atmosphere& A,
                       int gf_radius, double gf_eps);

// Dark-channel-prior transmission, used only as an MSE comparator:
// dark = min over patch and channels of I; A = per-channel mean of img over
// the ceil(0.001*H*W) brightest dark-channel pixels (ties row-major);
// t = 1 - 0.95 * min over patch and channels of (I_C / A_C), clamped [0,1].
ScalarMap dark_channel_baseline(const PlanarImage& img, int patch_radius);

}  // namespace sfp
