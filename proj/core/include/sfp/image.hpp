#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace sfp {

inline constexpr int kMinImageSide = 8;

// Single-channel float64 raster, row-major.
struct ScalarMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // size width*height

  ScalarMap() = default;
  ScalarMap(int w, int h, double fill = 0.0)
      : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

  double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
  std::size_t size() const { return values.size(); }
};

// Three-channel planar image, channels ordered R, G, B. Linear-light [0,1]
// unless a function documents otherwise.
struct PlanarImage {
  int width = 0;
  int height = 0;
  std::array<ScalarMap, 3> planes;

  PlanarImage() = default;
  PlanarImage(int w, int h, double fill = 0.0) : width(w), height(h) {
    for (auto& p : planes) p = ScalarMap(w, h, fill);
  }
};

// CIE L*a*b* planes (L in [0,100] nominally, a/b unbounded).
struct LabImage {
  int width = 0;
  int height = 0;
  ScalarMap l, a, b;

  LabImage() = default;
  LabImage(int w, int h) : width(w), height(h), l(w, h), a(w, h), b(w, h) {}
};

// Throws DimensionError unless both sides are >= kMinImageSide.
void require_min_size(int width, int height, const char* where);

// Rec.709 luma of linear RGB: 0.2126 R + 0.7152 G + 0.0722 B.
ScalarMap luminance709(const PlanarImage& img);

// Mean over the full (2r+1)^2 window with replicate padding at the borders,
// computed exactly via an integral image over the padded raster.
ScalarMap box_mean(const ScalarMap& src, int radius);

// Elementwise min across a (2r+1)^2 window with replicate padding. Separable
// two-pass implementation.
ScalarMap window_min(const ScalarMap& src, int radius);

}  // namespace sfp
