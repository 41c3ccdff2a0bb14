#pragma once

#include <array>

#include "sfp/image.hpp"

namespace sfp {

// Peak signal-to-noise ratio over all RGB samples, peak = 1. Returns +inf
// for identical images. Throws DimensionError on mismatched inputs.
double psnr(const PlanarImage& a, const PlanarImage& b);

inline constexpr std::array<double, 3> kUciqeCoeffs{0.4680, 0.2745, 0.2576};

// UCIQE = c1 * sigma_chroma + c2 * (q99 - q01 of L/100) + c3 * mean
// saturation, in Lab. Chroma is sqrt(a^2 + b^2)/100 for the deviation term;
// saturation is chroma / sqrt(chroma^2 + L^2) (0 where both vanish), which
// keeps every term in O(1) units. Constant gray images score 0.
double uciqe(const PlanarImage& img, const std::array<double, 3>& coeffs = kUciqeCoeffs);

}  // namespace sfp
