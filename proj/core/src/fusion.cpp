#include "sfp/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "sfp/color.hpp"
#include "sfp/errors.hpp"
#include "sfp/numeric.hpp"

namespace sfp {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void check_same_dims(int w1, int h1, int w2, int h2, const char* where) {
  if (w1 != w2 || h1 != h2) {
    throw DimensionError(std::string(where) + ": dimension mismatch");
  }
}

std::array<double, 3> softmax_neg_abs(double m0, double m1, double m2) {
  const double e0 = std::exp(-std::abs(m0));
  const double e1 = std::exp(-std::abs(m1));
  const double e2 = std::exp(-std::abs(m2));
  const double sum = e0 + e1 + e2;
  return {e0 / sum, e1 / sum, e2 / sum};
}

// Replicate-pads a plane to even dimensions.
ScalarMap pad_even(const ScalarMap& src) {
  const int w = src.width + (src.width % 2);
  const int h = src.height + (src.height % 2);
  if (w == src.width && h == src.height) return src;
  ScalarMap out(w, h);
  for (int y = 0; y < h; ++y) {
    const int sy = std::min(y, src.height - 1);
    for (int x = 0; x < w; ++x) {
      out.at(x, y) = src.at(std::min(x, src.width - 1), sy);
    }
  }
  return out;
}

}  // namespace

FusionWeights fusion_weights(const std::array<double, 2>& means_I,
                             const std::array<double, 2>& means_J,
                             const std::array<double, 2>& means_E) {
  FusionWeights w;
  w.a = softmax_neg_abs(means_I[0], means_J[0], means_E[0]);
  w.b = softmax_neg_abs(means_I[1], means_J[1], means_E[1]);
  return w;
}

void fuse_ab(const LabImage& I, const LabImage& J, const LabImage& E, ScalarMap& a_out,
             ScalarMap& b_out, FusionWeights* out_weights) {
  check_same_dims(I.width, I.height, J.width, J.height, "fuse_ab");
  check_same_dims(I.width, I.height, E.width, E.height, "fuse_ab");

  const FusionWeights w = fusion_weights({mean_of(I.a.values), mean_of(I.b.values)},
                                         {mean_of(J.a.values), mean_of(J.b.values)},
                                         {mean_of(E.a.values), mean_of(E.b.values)});
  if (out_weights) *out_weights = w;

  a_out = ScalarMap(I.width, I.height);
  b_out = ScalarMap(I.width, I.height);
  for (std::size_t i = 0; i < a_out.values.size(); ++i) {
    a_out.values[i] =
        w.a[0] * I.a.values[i] + w.a[1] * J.a.values[i] + w.a[2] * E.a.values[i];
    b_out.values[i] =
        w.b[0] * I.b.values[i] + w.b[1] * J.b.values[i] + w.b[2] * E.b.values[i];
  }
}

WaveletBands dwt_haar(const ScalarMap& plane) {
  WaveletBands bands;
  bands.orig_width = plane.width;
  bands.orig_height = plane.height;
  const ScalarMap src = pad_even(plane);
  const int hw = src.width / 2;
  const int hh = src.height / 2;

  // Rows: orthonormal lowpass/highpass pairs.
  ScalarMap lo(hw, src.height), hi(hw, src.height);
  for (int y = 0; y < src.height; ++y) {
    for (int k = 0; k < hw; ++k) {
      const double a = src.at(2 * k, y);
      const double b = src.at(2 * k + 1, y);
      lo.at(k, y) = (a + b) * kInvSqrt2;
      hi.at(k, y) = (a - b) * kInvSqrt2;
    }
  }

  // Columns of each half.
  bands.ll = ScalarMap(hw, hh);
  bands.lh = ScalarMap(hw, hh);
  bands.hl = ScalarMap(hw, hh);
  bands.hh = ScalarMap(hw, hh);
  for (int k = 0; k < hh; ++k) {
    for (int x = 0; x < hw; ++x) {
      const double la = lo.at(x, 2 * k);
      const double lb = lo.at(x, 2 * k + 1);
      bands.ll.at(x, k) = (la + lb) * kInvSqrt2;
      bands.lh.at(x, k) = (la - lb) * kInvSqrt2;
      const double ha = hi.at(x, 2 * k);
      const double hb = hi.at(x, 2 * k + 1);
      bands.hl.at(x, k) = (ha + hb) * kInvSqrt2;
      bands.hh.at(x, k) = (ha - hb) * kInvSqrt2;
    }
  }
  return bands;
}

ScalarMap idwt_haar(const WaveletBands& bands) {
  const int hw = bands.ll.width;
  const int hh = bands.ll.height;

  ScalarMap lo(hw, 2 * hh), hi(hw, 2 * hh);
  for (int k = 0; k < hh; ++k) {
    for (int x = 0; x < hw; ++x) {
      lo.at(x, 2 * k) = (bands.ll.at(x, k) + bands.lh.at(x, k)) * kInvSqrt2;
      lo.at(x, 2 * k + 1) = (bands.ll.at(x, k) - bands.lh.at(x, k)) * kInvSqrt2;
      hi.at(x, 2 * k) = (bands.hl.at(x, k) + bands.hh.at(x, k)) * kInvSqrt2;
      hi.at(x, 2 * k + 1) = (bands.hl.at(x, k) - bands.hh.at(x, k)) * kInvSqrt2;
    }
  }

  ScalarMap padded(2 * hw, 2 * hh);
  for (int y = 0; y < padded.height; ++y) {
    for (int k = 0; k < hw; ++k) {
      padded.at(2 * k, y) = (lo.at(k, y) + hi.at(k, y)) * kInvSqrt2;
      padded.at(2 * k + 1, y) = (lo.at(k, y) - hi.at(k, y)) * kInvSqrt2;
    }
  }

  if (padded.width == bands.orig_width && padded.height == bands.orig_height) return padded;
  ScalarMap out(bands.orig_width, bands.orig_height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) out.at(x, y) = padded.at(x, y);
  }
  return out;
}

ScalarMap fuse_l(const ScalarMap& I_l, const ScalarMap& J_l, const ScalarMap& E_l) {
  check_same_dims(I_l.width, I_l.height, J_l.width, J_l.height, "fuse_l");
  check_same_dims(I_l.width, I_l.height, E_l.width, E_l.height, "fuse_l");

  const WaveletBands bi = dwt_haar(I_l);
  const WaveletBands bj = dwt_haar(J_l);
  const WaveletBands be = dwt_haar(E_l);

  WaveletBands fused;
  fused.orig_width = bi.orig_width;
  fused.orig_height = bi.orig_height;
  fused.ll = bj.ll;  // base detail comes from the restored image

  const auto pick = [](const ScalarMap& a, const ScalarMap& b, const ScalarMap& c) {
    ScalarMap out(a.width, a.height);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      // Largest magnitude wins, sign kept; ties fall to the earlier source.
      double v = a.values[i];
      if (std::abs(b.values[i]) > std::abs(v)) v = b.values[i];
      if (std::abs(c.values[i]) > std::abs(v)) v = c.values[i];
      out.values[i] = v;
    }
    return out;
  };
  fused.lh = pick(bi.lh, bj.lh, be.lh);
  fused.hl = pick(bi.hl, bj.hl, be.hl);
  fused.hh = pick(bi.hh, bj.hh, be.hh);

  ScalarMap out = idwt_haar(fused);
  for (auto& v : out.values) v = std::clamp(v, 0.0, 100.0);
  return out;
}

PlanarImage postprocess(const PlanarImage& img, PostprocessInfo* info) {
  // Stage 1: adaptive gamma keyed to the mean luminance.
  const ScalarMap lum = luminance709(img);
  const double mean_l = mean_of(lum.values);
  const double gamma = std::clamp(std::log(0.5) / std::log(mean_l + 1e-6), 0.5, 2.5);

  PlanarImage out(img.width, img.height);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < out.planes[c].values.size(); ++i) {
      out.planes[c].values[i] = std::pow(img.planes[c].values[i], gamma);
    }
  }

  // Stage 2: Reinhard-style compression with the white point at the 0.98
  // quantile of the post-gamma luminance.
  const ScalarMap lum2 = luminance709(out);
  const double white = std::max(quantile(lum2.values, 0.98), 1e-6);
  const double inv_w2 = 1.0 / (white * white);
  for (int c = 0; c < 3; ++c) {
    for (auto& s : out.planes[c].values) {
      s = clamp01(s * (1.0 + s * inv_w2) / (1.0 + s));
    }
  }

  if (info) {
    info->gamma = gamma;
    info->white_point = white;
  }
  return out;
}

PlanarImage fuse(const PlanarImage& I, const PlanarImage& J, const PlanarImage& E,
                 const FuseOptions& opts, FuseInfo* info) {
  check_same_dims(I.width, I.height, J.width, J.height, "fuse");
  check_same_dims(I.width, I.height, E.width, E.height, "fuse");

  FuseInfo local;
  local.naive_average = opts.naive_average;
  local.postprocess_skipped = opts.skip_postprocess;

  PlanarImage combined(I.width, I.height);
  if (opts.naive_average) {
    for (int c = 0; c < 3; ++c) {
      for (std::size_t i = 0; i < combined.planes[c].values.size(); ++i) {
        combined.planes[c].values[i] =
            (I.planes[c].values[i] + J.planes[c].values[i] + E.planes[c].values[i]) / 3.0;
      }
    }
  } else {
    const LabImage li = rgb_to_lab(I);
    const LabImage lj = rgb_to_lab(J);
    const LabImage le = rgb_to_lab(E);

    LabImage fused(I.width, I.height);
    fuse_ab(li, lj, le, fused.a, fused.b, &local.weights);
    fused.l = fuse_l(li.l, lj.l, le.l);
    combined = lab_to_rgb(fused);
  }

  PlanarImage out =
      opts.skip_postprocess ? combined : postprocess(combined, &local.post);
  if (info) *info = local;
  return out;
}

}  // namespace sfp
