#include "sfp/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "sfp/errors.hpp"
#include "sfp/frequency.hpp"
#include "sfp/numeric.hpp"

namespace sfp {

namespace {

inline double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

// One octave of seeded value noise: random lattice values, smoothstep
// bilinear interpolation. cells >= 1.
ScalarMap value_noise(int width, int height, int cells, std::uint64_t& state) {
  const int g = cells + 1;
  std::vector<double> lattice(static_cast<std::size_t>(g) * g);
  for (auto& v : lattice) v = rand_unit(state);

  ScalarMap out(width, height);
  for (int y = 0; y < height; ++y) {
    const double fy = height > 1 ? static_cast<double>(y) / (height - 1) * cells : 0.0;
    const int iy = std::min(static_cast<int>(fy), cells - 1);
    const double ty = smoothstep(fy - iy);
    for (int x = 0; x < width; ++x) {
      const double fx = width > 1 ? static_cast<double>(x) / (width - 1) * cells : 0.0;
      const int ix = std::min(static_cast<int>(fx), cells - 1);
      const double tx = smoothstep(fx - ix);
      const double v00 = lattice[static_cast<std::size_t>(iy) * g + ix];
      const double v10 = lattice[static_cast<std::size_t>(iy) * g + ix + 1];
      const double v01 = lattice[static_cast<std::size_t>(iy + 1) * g + ix];
      const double v11 = lattice[static_cast<std::size_t>(iy + 1) * g + ix + 1];
      const double top = v00 + (v10 - v00) * tx;
      const double bot = v01 + (v11 - v01) * tx;
      out.at(x, y) = top + (bot - top) * ty;
    }
  }
  return out;
}

// Fractal sum of value-noise octaves, normalized to [0,1].
ScalarMap fbm(int width, int height, int octaves, std::uint64_t& state) {
  ScalarMap acc(width, height, 0.0);
  double amplitude = 1.0;
  for (int o = 0; o < octaves; ++o) {
    const int cells = 4 << o;
    const ScalarMap layer = value_noise(width, height, cells, state);
    for (std::size_t i = 0; i < acc.values.size(); ++i) {
      acc.values[i] += amplitude * layer.values[i];
    }
    amplitude *= 0.5;
  }
  double lo = acc.values[0], hi = acc.values[0];
  for (double v : acc.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi - lo > 0.0 ? hi - lo : 1.0;
  for (auto& v : acc.values) v = (v - lo) / span;
  return acc;
}

}  // namespace

PlanarImage make_clean_scene(const CleanSceneParams& params, std::uint64_t seed) {
  if (params.width < kMinImageSide || params.height < kMinImageSide) {
    throw DimensionError("make_clean_scene: below minimum size");
  }
  if (!(params.lo >= 0.0 && params.hi <= 1.0 && params.lo < params.hi)) {
    throw ParamError("make_clean_scene: need 0 <= lo < hi <= 1");
  }
  std::uint64_t state = seed;

  // Shared structure plus per-channel variation keeps the channels correlated
  // the way photographs are, without being identical.
  const ScalarMap shared = fbm(params.width, params.height, params.octaves, state);
  PlanarImage img(params.width, params.height);
  for (int c = 0; c < 3; ++c) {
    const ScalarMap own = fbm(params.width, params.height, params.octaves, state);
    for (std::size_t i = 0; i < shared.values.size(); ++i) {
      const double v = 0.7 * shared.values[i] + 0.3 * own.values[i];
      img.planes[c].values[i] = params.lo + (params.hi - params.lo) * v;
    }
  }
  return img;
}

SyntheticScene synthesize_haze(const PlanarImage& clean, DepthProfile profile, double beta_s,
                               const std::array<double, 3>& airlight, std::uint64_t seed) {
  if (beta_s <= 0.0) throw ParamError("synthesize_haze: beta_s must be positive");
  for (double a : airlight) {
    if (!(a > 0.0 && a <= 1.0)) throw ParamError("synthesize_haze: airlight outside (0,1]");
  }

  SyntheticScene scene;
  scene.clean = clean;
  scene.beta_s = beta_s;
  scene.airlight = airlight;
  scene.seed = seed;
  scene.profile = profile;

  ScalarMap depth(clean.width, clean.height);
  switch (profile) {
    case DepthProfile::kLinearRamp:
      for (int y = 0; y < clean.height; ++y) {
        const double d = clean.height > 1 ? static_cast<double>(y) / (clean.height - 1) : 0.0;
        for (int x = 0; x < clean.width; ++x) depth.at(x, y) = d;
      }
      break;
    case DepthProfile::kRadial: {
      const double cx = 0.5 * (clean.width - 1);
      const double cy = 0.5 * (clean.height - 1);
      const double rmax = std::sqrt(cx * cx + cy * cy);
      for (int y = 0; y < clean.height; ++y) {
        for (int x = 0; x < clean.width; ++x) {
          depth.at(x, y) = std::sqrt((x - cx) * (x - cx) + (y - cy) * (y - cy)) / rmax;
        }
      }
      break;
    }
    case DepthProfile::kPerlin: {
      std::uint64_t state = seed;
      depth = fbm(clean.width, clean.height, 3, state);
      break;
    }
  }

  scene.t_gt = ScalarMap(clean.width, clean.height);
  scene.degraded = PlanarImage(clean.width, clean.height);
  for (std::size_t i = 0; i < depth.values.size(); ++i) {
    const double t = std::exp(-beta_s * depth.values[i]);
    scene.t_gt.values[i] = t;
    for (int c = 0; c < 3; ++c) {
      scene.degraded.planes[c].values[i] =
          clean.planes[c].values[i] * t + airlight[c] * (1.0 - t);
    }
  }
  return scene;
}

double transmission_mse(const ScalarMap& t_est, const ScalarMap& t_gt) {
  if (t_est.width != t_gt.width || t_est.height != t_gt.height) {
    throw DimensionError("transmission_mse: dimension mismatch");
  }
  std::vector<double> sq(t_est.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const double d = t_est.values[i] - t_gt.values[i];
    sq[i] = d * d;
  }
  return mean_of(sq);
}

std::vector<DcDiffRow> dc_difference_stats(
    const std::vector<std::pair<PlanarImage, PlanarImage>>& degraded_clean_pairs) {
  std::vector<DcDiffRow> rows;
  rows.reserve(degraded_clean_pairs.size());
  for (std::size_t p = 0; p < degraded_clean_pairs.size(); ++p) {
    const auto& [degraded, clean] = degraded_clean_pairs[p];
    const double mu = (mean_of(degraded.planes[0].values) + mean_of(degraded.planes[1].values) +
                       mean_of(degraded.planes[2].values)) /
                      3.0;
    DcDiffRow row;
    row.pair = static_cast<int>(p);
    for (int c = 0; c < 3; ++c) {
      row.diff[c] = std::abs(mean_of(clean.planes[c].values) - mu);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<RadialRow> radial_stats(const std::vector<PlanarImage>& images, RhoNorm norm) {
  std::vector<RadialRow> rows;
  rows.reserve(images.size());
  for (std::size_t n = 0; n < images.size(); ++n) {
    const auto& img = images[n];
    const RadialGrid grid = RadialGrid::make(img.width, img.height, norm);
    RadialRow row;
    row.image = static_cast<int>(n);
    for (int c = 0; c < 3; ++c) {
      row.phi[c] = low_freq_percentage(fft2(img.planes[c]), grid);
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

constexpr DepthProfile kProfileCycle[3] = {DepthProfile::kLinearRamp, DepthProfile::kRadial,
                                           DepthProfile::kPerlin};

}  // namespace

std::vector<SyntheticScene> transmission_corpus(const CorpusSpec& spec) {
  std::vector<SyntheticScene> scenes;
  scenes.reserve(spec.scenes);
  std::uint64_t state = spec.seed;
  for (int i = 0; i < spec.scenes; ++i) {
    const std::uint64_t scene_seed = splitmix64_next(state);
    // Dense fog over dark, low-contrast scenes with near-white airlight: the
    // regime the gradient-direction prior is built for, and dense enough that
    // the degraded image carries very little of the original radiance.
    CleanSceneParams params;
    params.width = spec.side;
    params.height = spec.side;
    params.lo = 0.03 + 0.02 * rand_unit(state);
    params.hi = params.lo + 0.07 + 0.03 * rand_unit(state);
    const PlanarImage clean = make_clean_scene(params, scene_seed);

    const double beta_s = 3.2 + 1.2 * rand_unit(state);
    const double base = 0.955 + 0.04 * rand_unit(state);
    std::array<double, 3> airlight;
    for (int c = 0; c < 3; ++c) {
      airlight[c] = std::clamp(base + 0.01 * (rand_unit(state) - 0.5), 0.05, 1.0);
    }
    scenes.push_back(synthesize_haze(clean, kProfileCycle[i % 3], beta_s, airlight,
                                     scene_seed ^ 0x5eed));
  }
  return scenes;
}

std::vector<SyntheticScene> dc_statistics_corpus(const CorpusSpec& spec) {
  std::vector<SyntheticScene> scenes;
  scenes.reserve(spec.scenes);
  std::uint64_t state = spec.seed * 0x9E3779B97F4A7C15ull + 1;
  for (int i = 0; i < spec.scenes; ++i) {
    const std::uint64_t scene_seed = splitmix64_next(state);
    CleanSceneParams params;
    params.width = spec.side;
    params.height = spec.side;
    params.lo = 0.15;
    params.hi = 0.60;
    const PlanarImage clean = make_clean_scene(params, scene_seed);

    const double beta_s = 0.25 + 0.55 * rand_unit(state);
    const double a = 0.75 + 0.17 * rand_unit(state);
    scenes.push_back(synthesize_haze(clean, kProfileCycle[i % 3], beta_s, {a, a, a},
                                     scene_seed ^ 0xdc));
  }
  return scenes;
}

}  // namespace sfp
