#include "sfp/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sfp/errors.hpp"
#include "sfp/numeric.hpp"

namespace sfp {

namespace {

constexpr double kFlatNorm = 1e-12;
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

inline int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

// Central-difference gradient magnitude with replicate borders.
ScalarMap gradient_magnitude(const ScalarMap& src) {
  ScalarMap out(src.width, src.height);
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      const double gx = 0.5 * (src.at(clamp_index(x + 1, src.width), y) -
                               src.at(clamp_index(x - 1, src.width), y));
      const double gy = 0.5 * (src.at(x, clamp_index(y + 1, src.height)) -
                               src.at(x, clamp_index(y - 1, src.height)));
      out.at(x, y) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return out;
}

void check_same_dims(int w1, int h1, int w2, int h2, const char* where) {
  if (w1 != w2 || h1 != h2) {
    throw DimensionError(std::string(where) + ": dimension mismatch");
  }
}

}  // namespace

DirectionField spectral_direction(const PlanarImage& img, int patch_radius) {
  if (patch_radius < 1) throw ParamError("patch_radius must be >= 1");
  require_min_size(img.width, img.height, "spectral_direction");

  std::array<ScalarMap, 3> grad;
  for (int c = 0; c < 3; ++c) grad[c] = gradient_magnitude(img.planes[c]);

  // Normalize each pixel's magnitude triple; flat pixels get the neutral
  // direction so the later patch average never divides by zero.
  std::array<ScalarMap, 3> unit;
  for (auto& u : unit) u = ScalarMap(img.width, img.height);
  bool any_structured = false;
  for (std::size_t i = 0; i < grad[0].values.size(); ++i) {
    const double r = grad[0].values[i];
    const double g = grad[1].values[i];
    const double b = grad[2].values[i];
    const double norm = std::sqrt(r * r + g * g + b * b);
    if (norm < kFlatNorm) {
      unit[0].values[i] = kInvSqrt3;
      unit[1].values[i] = kInvSqrt3;
      unit[2].values[i] = kInvSqrt3;
    } else {
      any_structured = true;
      unit[0].values[i] = r / norm;
      unit[1].values[i] = g / norm;
      unit[2].values[i] = b / norm;
    }
  }

  DirectionField field;
  field.width = img.width;
  field.height = img.height;
  field.all_fallback = !any_structured;
  for (int c = 0; c < 3; ++c) field.v[c] = box_mean(unit[c], patch_radius);

  // Components are non-negative and each contributing triple has unit norm,
  // so the averaged vector is never near zero.
  for (std::size_t i = 0; i < field.v[0].values.size(); ++i) {
    const double r = field.v[0].values[i];
    const double g = field.v[1].values[i];
    const double b = field.v[2].values[i];
    const double norm = std::sqrt(r * r + g * g + b * b);
    field.v[0].values[i] = r / norm;
    field.v[1].values[i] = g / norm;
    field.v[2].values[i] = b / norm;
  }
  return field;
}

TransmissionMap estimate_transmission(const PlanarImage& img, const DirectionField& S) {
  check_same_dims(img.width, img.height, S.width, S.height, "estimate_transmission");

  TransmissionMap t;
  t.values = ScalarMap(img.width, img.height);
  for (std::size_t i = 0; i < t.values.values.size(); ++i) {
    const double sr = S.v[0].values[i];
    const double sg = S.v[1].values[i];
    const double sb = S.v[2].values[i];
    const double p = sr * (1.0 - img.planes[0].values[i]) +
                     sg * (1.0 - img.planes[1].values[i]) +
                     sb * (1.0 - img.planes[2].values[i]);
    t.values.values[i] = clamp01(p * (sr + sg + sb) / 3.0);
  }

  // Lower bound: mean of the lowest 5% of the clamped map, floored at 0.01.
  const std::size_t n = t.values.values.size();
  const std::size_t k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(n))));
  std::vector<double> lowest = t.values.values;
  std::nth_element(lowest.begin(), lowest.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   lowest.end());
  lowest.resize(k);
  std::sort(lowest.begin(), lowest.end());
  t.t_min = std::max(0.01, mean_of(lowest));
  return t;
}

Atmosphere estimate_atmospheric_light(const PlanarImage& img, const TransmissionMap& t) {
  check_same_dims(img.width, img.height, t.values.width, t.values.height,
                  "estimate_atmospheric_light");
  const std::size_t n = t.values.values.size();
  const std::size_t k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(0.001 * static_cast<double>(n))));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   order.end(), [&](std::size_t i, std::size_t j) {
                     const double a = t.values.values[i];
                     const double b = t.values.values[j];
                     return a != b ? a < b : i < j;
                   });
  order.resize(k);
  std::sort(order.begin(), order.end());  // fixed summation order

  Atmosphere a;
  for (int c = 0; c < 3; ++c) {
    std::vector<double> sel(k);
    for (std::size_t i = 0; i < k; ++i) sel[i] = img.planes[c].values[order[i]];
    a.rgb[c] = std::clamp(mean_of(sel), 0.05, 1.0);
  }
  return a;
}

ScalarMap guided_filter(const ScalarMap& p, const ScalarMap& guide, int radius, double eps) {
  check_same_dims(p.width, p.height, guide.width, guide.height, "guided_filter");
  if (radius < 1) throw ParamError("guided_filter radius must be >= 1");
  if (eps <= 0.0) throw ParamError("guided_filter eps must be positive");

  const ScalarMap mean_i = box_mean(guide, radius);
  const ScalarMap mean_p = box_mean(p, radius);

  ScalarMap ip(p.width, p.height), ii(p.width, p.height);
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    ip.values[i] = guide.values[i] * p.values[i];
    ii.values[i] = guide.values[i] * guide.values[i];
  }
  const ScalarMap mean_ip = box_mean(ip, radius);
  const ScalarMap mean_ii = box_mean(ii, radius);

  ScalarMap a(p.width, p.height), b(p.width, p.height);
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    const double cov = mean_ip.values[i] - mean_i.values[i] * mean_p.values[i];
    const double var = mean_ii.values[i] - mean_i.values[i] * mean_i.values[i];
    a.values[i] = cov / (var + eps);
    b.values[i] = mean_p.values[i] - a.values[i] * mean_i.values[i];
  }

  const ScalarMap mean_a = box_mean(a, radius);
  const ScalarMap mean_b = box_mean(b, radius);
  ScalarMap q(p.width, p.height);
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    q.values[i] = mean_a.values[i] * guide.values[i] + mean_b.values[i];
  }
  return q;
}

PlanarImage invert_asm(const PlanarImage& img, const TransmissionMap& t, const Atmosphere& A,
                       int gf_radius, double gf_eps) {
  const ScalarMap guide = luminance709(img);
  const ScalarMap refined = guided_filter(t.values, guide, gf_radius, gf_eps);

  PlanarImage out(img.width, img.height);
  for (std::size_t i = 0; i < refined.values.size(); ++i) {
    const double denom = std::max(refined.values[i], t.t_min);
    for (int c = 0; c < 3; ++c) {
      const double j = (img.planes[c].values[i] - A.rgb[c]) / denom + A.rgb[c];
      out.planes[c].values[i] = clamp01(j);
    }
  }
  return out;
}

ScalarMap dark_channel_baseline(const PlanarImage& img, int patch_radius) {
  if (patch_radius < 1) throw ParamError("patch_radius must be >= 1");

  ScalarMap channel_min(img.width, img.height);
  for (std::size_t i = 0; i < channel_min.values.size(); ++i) {
    channel_min.values[i] = std::min({img.planes[0].values[i], img.planes[1].values[i],
                                      img.planes[2].values[i]});
  }
  const ScalarMap dark = window_min(channel_min, patch_radius);

  // Airlight from the brightest 0.1% of dark-channel pixels (ties row-major).
  const std::size_t n = dark.values.size();
  const std::size_t k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(0.001 * static_cast<double>(n))));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   order.end(), [&](std::size_t i, std::size_t j) {
                     const double a = dark.values[i];
                     const double b = dark.values[j];
                     return a != b ? a > b : i < j;
                   });
  order.resize(k);
  std::sort(order.begin(), order.end());

  std::array<double, 3> airlight{};
  for (int c = 0; c < 3; ++c) {
    std::vector<double> sel(k);
    for (std::size_t i = 0; i < k; ++i) sel[i] = img.planes[c].values[order[i]];
    airlight[c] = std::max(mean_of(sel), 0.05);
  }

  ScalarMap ratio(img.width, img.height);
  for (std::size_t i = 0; i < ratio.values.size(); ++i) {
    ratio.values[i] = std::min({img.planes[0].values[i] / airlight[0],
                                img.planes[1].values[i] / airlight[1],
                                img.planes[2].values[i] / airlight[2]});
  }
  const ScalarMap ratio_min = window_min(ratio, patch_radius);

  ScalarMap t(img.width, img.height);
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    t.values[i] = clamp01(1.0 - 0.95 * ratio_min.values[i]);
  }
  return t;
}

}  // namespace sfp
