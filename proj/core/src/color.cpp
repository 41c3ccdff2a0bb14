#include "sfp/color.hpp"

#include <cmath>

#include "sfp/errors.hpp"
#include "sfp/numeric.hpp"

namespace sfp {

namespace {

// IEC 61966-2-1 sRGB <-> XYZ (D65). The decode matrix is inverted numerically
// once so that encode(decode(x)) cancels to machine precision; the published
// 4-digit inverse would cap the round trip near 1e-7.
constexpr double kRgbToXyz[3][3] = {
    {0.4124, 0.3576, 0.1805},
    {0.2126, 0.7152, 0.0722},
    {0.0193, 0.1192, 0.9505},
};

struct Mat3 {
  double m[3][3];
};

Mat3 invert(const double a[3][3]) {
  const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                     a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  Mat3 r;
  r.m[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det;
  r.m[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det;
  r.m[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det;
  r.m[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / det;
  r.m[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det;
  r.m[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det;
  r.m[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det;
  r.m[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det;
  r.m[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det;
  return r;
}

const Mat3 kXyzToRgb = invert(kRgbToXyz);

// D65 reference white = forward matrix applied to (1,1,1).
constexpr double kXn = kRgbToXyz[0][0] + kRgbToXyz[0][1] + kRgbToXyz[0][2];
constexpr double kYn = kRgbToXyz[1][0] + kRgbToXyz[1][1] + kRgbToXyz[1][2];
constexpr double kZn = kRgbToXyz[2][0] + kRgbToXyz[2][1] + kRgbToXyz[2][2];

// CIE Lab pivot constants as exact rationals.
constexpr double kLabEps = 216.0 / 24389.0;     // (6/29)^3
constexpr double kLabSlope = 841.0 / 108.0;     // (29/6)^2 / 3
constexpr double kLabOffset = 4.0 / 29.0;
constexpr double kLabDelta = 6.0 / 29.0;

// Decode threshold 12.92 * 0.0031308 (not the rounded 0.04045) so both
// directions branch at the same point.
constexpr double kSrgbLinearCut = 0.0031308;
constexpr double kSrgbEncodedCut = 12.92 * kSrgbLinearCut;

inline double lab_f(double t) {
  return t > kLabEps ? std::cbrt(t) : kLabSlope * t + kLabOffset;
}

inline double lab_finv(double f) {
  return f > kLabDelta ? f * f * f : (f - kLabOffset) / kLabSlope;
}

}  // namespace

double srgb_encode(double linear) {
  return linear <= kSrgbLinearCut ? 12.92 * linear
                                  : 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

double srgb_decode(double encoded) {
  return encoded <= kSrgbEncodedCut ? encoded / 12.92
                                    : std::pow((encoded + 0.055) / 1.055, 2.4);
}

void rgb_to_lab_pixel(double r, double g, double b, double& L, double& A, double& B) {
  const double lr = srgb_decode(r);
  const double lg = srgb_decode(g);
  const double lb = srgb_decode(b);
  const double x = kRgbToXyz[0][0] * lr + kRgbToXyz[0][1] * lg + kRgbToXyz[0][2] * lb;
  const double y = kRgbToXyz[1][0] * lr + kRgbToXyz[1][1] * lg + kRgbToXyz[1][2] * lb;
  const double z = kRgbToXyz[2][0] * lr + kRgbToXyz[2][1] * lg + kRgbToXyz[2][2] * lb;
  const double fx = lab_f(x / kXn);
  const double fy = lab_f(y / kYn);
  const double fz = lab_f(z / kZn);
  L = 116.0 * fy - 16.0;
  A = 500.0 * (fx - fy);
  B = 200.0 * (fy - fz);
}

void lab_to_rgb_pixel(double L, double A, double B, double& r, double& g, double& b) {
  const double fy = (L + 16.0) / 116.0;
  const double fx = fy + A / 500.0;
  const double fz = fy - B / 200.0;
  const double x = kXn * lab_finv(fx);
  const double y = kYn * lab_finv(fy);
  const double z = kZn * lab_finv(fz);
  const auto& m = kXyzToRgb.m;
  const double lr = m[0][0] * x + m[0][1] * y + m[0][2] * z;
  const double lg = m[1][0] * x + m[1][1] * y + m[1][2] * z;
  const double lb = m[2][0] * x + m[2][1] * y + m[2][2] * z;
  r = clamp01(srgb_encode(lr));
  g = clamp01(srgb_encode(lg));
  b = clamp01(srgb_encode(lb));
}

LabImage rgb_to_lab(const PlanarImage& img) {
  LabImage out(img.width, img.height);
  const auto& r = img.planes[0].values;
  const auto& g = img.planes[1].values;
  const auto& b = img.planes[2].values;
  for (std::size_t i = 0; i < r.size(); ++i) {
    rgb_to_lab_pixel(r[i], g[i], b[i], out.l.values[i], out.a.values[i], out.b.values[i]);
  }
  return out;
}

PlanarImage lab_to_rgb(const LabImage& lab) {
  PlanarImage out(lab.width, lab.height);
  auto& r = out.planes[0].values;
  auto& g = out.planes[1].values;
  auto& b = out.planes[2].values;
  for (std::size_t i = 0; i < r.size(); ++i) {
    lab_to_rgb_pixel(lab.l.values[i], lab.a.values[i], lab.b.values[i], r[i], g[i], b[i]);
  }
  return out;
}

}  // namespace sfp
