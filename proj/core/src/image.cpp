#include "sfp/image.hpp"

#include <algorithm>
#include <string>

#include "sfp/errors.hpp"

namespace sfp {

void require_min_size(int width, int height, const char* where) {
  if (width < kMinImageSide || height < kMinImageSide) {
    throw DimensionError(std::string(where) + ": image must be at least 8x8, got " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
}

ScalarMap luminance709(const PlanarImage& img) {
  ScalarMap out(img.width, img.height);
  const auto& r = img.planes[0].values;
  const auto& g = img.planes[1].values;
  const auto& b = img.planes[2].values;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = 0.2126 * r[i] + 0.7152 * g[i] + 0.0722 * b[i];
  }
  return out;
}

namespace {

inline int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

}  // namespace

ScalarMap box_mean(const ScalarMap& src, int radius) {
  if (radius < 1) throw ParamError("box radius must be >= 1");
  const int w = src.width;
  const int h = src.height;
  const int pw = w + 2 * radius;
  const int ph = h + 2 * radius;

  // Integral image over the replicate-padded raster; one extra row/column of
  // zeros so window sums are four lookups.
  std::vector<double> integral(static_cast<std::size_t>(pw + 1) * (ph + 1), 0.0);
  const auto iat = [&](int x, int y) -> double& {
    return integral[static_cast<std::size_t>(y) * (pw + 1) + x];
  };
  for (int y = 0; y < ph; ++y) {
    double row = 0.0;
    const int sy = clamp_index(y - radius, h);
    for (int x = 0; x < pw; ++x) {
      const int sx = clamp_index(x - radius, w);
      row += src.at(sx, sy);
      iat(x + 1, y + 1) = iat(x + 1, y) + row;
    }
  }

  const double area = static_cast<double>(2 * radius + 1) * (2 * radius + 1);
  ScalarMap out(w, h);
  for (int y = 0; y < h; ++y) {
    const int y0 = y;                  // padded window top = (y+radius) - radius
    const int y1 = y + 2 * radius + 1;
    for (int x = 0; x < w; ++x) {
      const int x0 = x;
      const int x1 = x + 2 * radius + 1;
      const double s = iat(x1, y1) - iat(x0, y1) - iat(x1, y0) + iat(x0, y0);
      out.at(x, y) = s / area;
    }
  }
  return out;
}

namespace {

// 1-D sliding min along one axis with replicate padding, brute window scan.
// Windows are small (<= 2r+1) and this keeps the semantics obvious.
void min_pass_rows(const ScalarMap& src, int radius, ScalarMap& dst) {
  const int w = src.width;
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < w; ++x) {
      double m = src.at(clamp_index(x - radius, w), y);
      for (int k = -radius + 1; k <= radius; ++k) {
        m = std::min(m, src.at(clamp_index(x + k, w), y));
      }
      dst.at(x, y) = m;
    }
  }
}

void min_pass_cols(const ScalarMap& src, int radius, ScalarMap& dst) {
  const int h = src.height;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < src.width; ++x) {
      double m = src.at(x, clamp_index(y - radius, h));
      for (int k = -radius + 1; k <= radius; ++k) {
        m = std::min(m, src.at(x, clamp_index(y + k, h)));
      }
      dst.at(x, y) = m;
    }
  }
}

}  // namespace

ScalarMap window_min(const ScalarMap& src, int radius) {
  if (radius < 1) throw ParamError("window radius must be >= 1");
  ScalarMap rows(src.width, src.height);
  min_pass_rows(src, radius, rows);
  ScalarMap out(src.width, src.height);
  min_pass_cols(rows, radius, out);
  return out;
}

}  // namespace sfp
