#pragma once

#include "sfp/image.hpp"

namespace sfp {

// sRGB transfer curve (IEC 61966-2-1), scalar form. The decode threshold is
// 12.92 * 0.0031308 so the two directions partition [0,1] identically and an
// encode/decode round trip is exact to machine precision.
double srgb_encode(double linear);
double srgb_decode(double encoded);

// PlanarImage <-> CIE L*a*b*, D65 2-degree white. Samples are treated as
// sRGB-encoded [0,1] values: decode -> XYZ -> Lab. The RGB<-XYZ matrix is the
// exact inverse of the forward matrix, so rgb -> lab -> rgb is stable to
// ~1e-15 for in-gamut inputs.
LabImage rgb_to_lab(const PlanarImage& img);

// Inverse of rgb_to_lab; out-of-gamut results are clamped to [0,1].
PlanarImage lab_to_rgb(const LabImage& lab);

void rgb_to_lab_pixel(double r, double g, double b, double& L, double& A, double& B);
void lab_to_rgb_pixel(double L, double A, double B, double& r, double& g, double& b);

}  // namespace sfp
