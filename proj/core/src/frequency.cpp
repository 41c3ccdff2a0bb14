#include "sfp/frequency.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "sfp/errors.hpp"
#include "sfp/numeric.hpp"

namespace sfp {

namespace {

// FFTW's planner is not thread-safe; executing independent plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  fftw_complex* data = nullptr;
  explicit FftwBuffer(std::size_t n) {
    data = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
};

void run_dft(const std::complex<double>* in, std::complex<double>* out, int width, int height,
             int sign) {
  const std::size_t n = static_cast<std::size_t>(width) * height;
  FftwBuffer buf_in(n), buf_out(n);
  for (std::size_t i = 0; i < n; ++i) {
    buf_in.data[i][0] = in[i].real();
    buf_in.data[i][1] = in[i].imag();
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_2d(height, width, buf_in.data, buf_out.data, sign, FFTW_ESTIMATE);
  }
  if (!plan) throw NumericalError("fftw plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {buf_out.data[i][0], buf_out.data[i][1]};
  }
}

inline int signed_index(int i, int n) { return i <= (n - 1) / 2 ? i : i - n; }

// Indices of the bins forming the numerator of phi: everything with
// rho < thresh, or — when no non-DC bin qualifies — DC plus the 8 bins
// nearest in rho (ties row-major).
std::vector<std::size_t> low_set(const RadialGrid& grid, double thresh) {
  std::vector<std::size_t> low;
  for (std::size_t i = 0; i < grid.rho.size(); ++i) {
    if (grid.rho[i] < thresh) low.push_back(i);
  }
  if (low.size() > 1) return low;

  std::vector<std::size_t> order(grid.rho.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  order.erase(order.begin());  // drop DC
  const std::size_t take = std::min<std::size_t>(8, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      return grid.rho[a] != grid.rho[b] ? grid.rho[a] < grid.rho[b] : a < b;
                    });
  order.resize(take);
  low.assign(1, 0);
  low.insert(low.end(), order.begin(), order.end());
  std::sort(low.begin(), low.end());
  return low;
}

}  // namespace

RadialGrid RadialGrid::make(int width, int height, RhoNorm norm) {
  RadialGrid grid;
  grid.width = width;
  grid.height = height;
  grid.rho.resize(static_cast<std::size_t>(width) * height);
  const double diag = std::sqrt(static_cast<double>(width) * width +
                                static_cast<double>(height) * height);
  for (int v = 0; v < height; ++v) {
    const double fv = signed_index(v, height);
    for (int u = 0; u < width; ++u) {
      const double fu = signed_index(u, width);
      double r;
      if (norm == RhoNorm::kAxis) {
        const double a = fu / width;
        const double b = fv / height;
        r = std::sqrt(a * a + b * b);
      } else {
        r = std::sqrt(fu * fu + fv * fv) / diag;
      }
      grid.rho[static_cast<std::size_t>(v) * width + u] = r;
    }
  }
  return grid;
}

Spectrum fft2(const ScalarMap& channel) {
  require_min_size(channel.width, channel.height, "fft2");
  const std::size_t n = channel.values.size();
  std::vector<std::complex<double>> in(n);
  for (std::size_t i = 0; i < n; ++i) in[i] = {channel.values[i], 0.0};

  Spectrum spec;
  spec.width = channel.width;
  spec.height = channel.height;
  spec.coeffs.resize(n);
  run_dft(in.data(), spec.coeffs.data(), channel.width, channel.height, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& c : spec.coeffs) c *= scale;
  return spec;
}

ScalarMap ifft2(const Spectrum& spec) {
  require_min_size(spec.width, spec.height, "ifft2");
  const std::size_t n = spec.coeffs.size();
  std::vector<std::complex<double>> out(n);
  // Forward divided by H*W, so the unnormalized backward transform is the
  // exact inverse.
  run_dft(spec.coeffs.data(), out.data(), spec.width, spec.height, FFTW_BACKWARD);

  ScalarMap img(spec.width, spec.height);
  double max_im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    img.values[i] = out[i].real();
    max_im = std::max(max_im, std::abs(out[i].imag()));
  }
  if (max_im > 1e-9) {
    throw NumericalError("ifft2: spectrum is not conjugate-symmetric (max |Im| = " +
                         std::to_string(max_im) + ")");
  }
  return img;
}

std::array<double, 3> alpha_from_dc(const PlanarImage& img) {
  std::array<double, 3> dc{};
  for (int c = 0; c < 3; ++c) {
    dc[c] = mean_of(img.planes[c].values);
    if (dc[c] < 1e-4) {
      throw DegenerateInput("alpha_from_dc: channel " + std::to_string(c) +
                            " mean below 1e-4");
    }
  }
  const double mu = (dc[0] + dc[1] + dc[2]) / 3.0;
  return {mu / dc[0] + 1.0, mu / dc[1] + 1.0, mu / dc[2] + 1.0};
}

FreqMask build_mask(const RadialGrid& grid, double alpha, double beta) {
  if (beta <= 0.0) throw ParamError("mask beta must be positive");
  if (alpha < 1.0) throw ParamError("mask alpha must be >= 1");
  FreqMask mask;
  mask.width = grid.width;
  mask.height = grid.height;
  mask.alpha = alpha;
  mask.beta = beta;
  mask.values.resize(grid.rho.size());
  const double inv_b2 = 1.0 / (beta * beta);
  for (std::size_t i = 0; i < grid.rho.size(); ++i) {
    mask.values[i] = alpha - std::exp(-grid.rho[i] * grid.rho[i] * inv_b2);
  }
  return mask;
}

FreqMask build_mask(int width, int height, double alpha, double beta) {
  return build_mask(RadialGrid::make(width, height), alpha, beta);
}

double low_freq_percentage(const Spectrum& spec, const RadialGrid& grid, double thresh) {
  if (spec.width != grid.width || spec.height != grid.height) {
    throw DimensionError("low_freq_percentage: grid/spectrum mismatch");
  }
  std::vector<double> mags(spec.coeffs.size());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(spec.coeffs[i]);
  const double total = compensated_sum(mags);
  if (total <= 0.0) throw DegenerateInput("low_freq_percentage: all-zero spectrum");

  std::vector<double> low_mags;
  for (std::size_t i : low_set(grid, thresh)) low_mags.push_back(mags[i]);
  return compensated_sum(low_mags) / total;
}

double low_freq_percentage(const Spectrum& spec, double thresh) {
  return low_freq_percentage(spec, RadialGrid::make(spec.width, spec.height), thresh);
}

namespace {

// Magnitudes grouped by unique rho^2 so each objective evaluation costs one
// exp per distinct radius instead of one per bin.
struct BetaObjective {
  double alpha = 0.0;
  double target = 0.0;
  double total = 0.0;                  // sum of all magnitudes
  std::vector<double> group_rho2;      // distinct rho^2, ascending
  std::vector<double> group_mag;       // magnitude sum per group
  std::vector<double> low_rho2;        // per low-set bin
  std::vector<double> low_mag;

  double phi(double beta) const {
    const double inv_b2 = 1.0 / (beta * beta);
    double denom = alpha * total;
    for (std::size_t g = 0; g < group_rho2.size(); ++g) {
      denom -= group_mag[g] * std::exp(-group_rho2[g] * inv_b2);
    }
    double numer = 0.0;
    for (std::size_t i = 0; i < low_rho2.size(); ++i) {
      numer += low_mag[i] * (alpha - std::exp(-low_rho2[i] * inv_b2));
    }
    return numer / denom;
  }

  double operator()(double beta) const { return std::abs(phi(beta) - target); }
};

BetaObjective make_objective(const Spectrum& spec, const RadialGrid& grid, double alpha,
                             double target, double thresh) {
  BetaObjective obj;
  obj.alpha = alpha;
  obj.target = target;

  std::vector<double> mags(spec.coeffs.size());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(spec.coeffs[i]);
  obj.total = compensated_sum(mags);

  std::vector<std::pair<double, double>> pairs(mags.size());
  for (std::size_t i = 0; i < mags.size(); ++i) {
    pairs[i] = {grid.rho[i] * grid.rho[i], mags[i]};
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [r2, m] : pairs) {
    if (!obj.group_rho2.empty() && obj.group_rho2.back() == r2) {
      obj.group_mag.back() += m;
    } else {
      obj.group_rho2.push_back(r2);
      obj.group_mag.push_back(m);
    }
  }

  for (std::size_t i : low_set(grid, thresh)) {
    obj.low_rho2.push_back(grid.rho[i] * grid.rho[i]);
    obj.low_mag.push_back(mags[i]);
  }
  return obj;
}

}  // namespace

BetaSearch optimize_beta(const Spectrum& spec, const RadialGrid& grid, double alpha,
                         double target, double tol, BetaBounds bounds) {
  if (alpha < 1.0) throw ParamError("optimize_beta: alpha must be >= 1");
  if (!(bounds.lo > 0.0 && bounds.hi > bounds.lo)) {
    throw ParamError("optimize_beta: invalid bounds");
  }

  BetaSearch result;

  bool all_zero = true;
  for (const auto& c : spec.coeffs) {
    if (c != std::complex<double>{0.0, 0.0}) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) {
    // Degenerate by convention: a zero spectrum behaves like a constant image
    // (phi = 1 at every beta), so any bound is as good as any other.
    result.beta = bounds.lo;
    result.objective = std::abs(1.0 - target);
    result.hit_lower = true;
    return result;
  }

  const BetaObjective f = make_objective(spec, grid, alpha, target, 0.001);
  const double range = bounds.hi - bounds.lo;
  const int max_evals = 200;
  int evals = 0;

  double best_x = bounds.lo;
  double best_f = 0.0;
  const auto eval = [&](double x) {
    const double fx = f(x);
    if (evals == 0 || fx < best_f) {
      best_f = fx;
      best_x = x;
    }
    ++evals;
    return fx;
  };

  // Coarse scan first: it brackets the global valley (including the bound
  // cases, since endpoints are part of the scan) before the local refinement.
  constexpr int kScan = 32;
  std::array<double, kScan> scan_x;
  int best_i = 0;
  double scan_best = 0.0;
  for (int i = 0; i < kScan; ++i) {
    scan_x[i] = bounds.lo + range * static_cast<double>(i) / (kScan - 1);
    const double fi = eval(scan_x[i]);
    if (i == 0 || fi < scan_best) {
      scan_best = fi;
      best_i = i;
    }
  }

  // Brent's method inside the bracketing neighbors: golden-section steps with
  // parabolic interpolation when the fit is trustworthy.
  const double golden = 0.5 * (3.0 - std::sqrt(5.0));
  double a = scan_x[std::max(0, best_i - 1)];
  double b = scan_x[std::min(kScan - 1, best_i + 1)];
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = eval(x);
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  while (evals < max_evals) {
    const double m = 0.5 * (a + b);
    const double tol_abs = tol * range * 0.5;
    if (b - a < tol * range || std::abs(x - m) + 0.5 * (b - a) <= 2.0 * tol_abs) break;

    bool parabolic = false;
    if (std::abs(e) > tol_abs) {
      // Fit a parabola through (v,fv), (w,fw), (x,fx).
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_old = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < 2.0 * tol_abs || b - u < 2.0 * tol_abs) {
          d = x < m ? tol_abs : -tol_abs;
        }
        parabolic = true;
      }
    }
    if (!parabolic) {
      e = (x < m ? b : a) - x;
      d = golden * e;
    }
    const double u = std::abs(d) >= tol_abs ? x + d : x + (d > 0.0 ? tol_abs : -tol_abs);
    const double fu = eval(u);

    if (fu <= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }

  result.beta = best_x;
  result.objective = best_f;
  result.evaluations = evals;
  result.hit_lower = best_x - bounds.lo <= tol * range;
  result.hit_upper = bounds.hi - best_x <= tol * range;
  return result;
}

BetaSearch optimize_beta(const ScalarMap& channel, double alpha, double target, double tol,
                         BetaBounds bounds) {
  const Spectrum spec = fft2(channel);
  const RadialGrid grid = RadialGrid::make(spec.width, spec.height);
  return optimize_beta(spec, grid, alpha, target, tol, bounds);
}

EnhanceResult enhance(const PlanarImage& img, const FdpOptions& opts) {
  require_min_size(img.width, img.height, "enhance");
  const std::array<double, 3> alpha = alpha_from_dc(img);
  const RadialGrid grid = RadialGrid::make(img.width, img.height, opts.rho_norm);

  EnhanceResult result;
  result.image = PlanarImage(img.width, img.height);
  for (int c = 0; c < 3; ++c) {
    const Spectrum spec = fft2(img.planes[c]);
    result.params.phi_before[c] = low_freq_percentage(spec, grid, opts.low_freq_threshold);

    const BetaSearch search = optimize_beta(spec, grid, alpha[c], opts.target_phi,
                                            opts.beta_tol, opts.bounds);
    result.params.alpha[c] = alpha[c];
    result.params.beta[c] = search.beta;
    result.params.beta_evaluations[c] = search.evaluations;
    result.params.beta_hit_lower[c] = search.hit_lower;
    result.params.beta_hit_upper[c] = search.hit_upper;

    const FreqMask mask = build_mask(grid, alpha[c], search.beta);
    Spectrum masked = spec;
    for (std::size_t i = 0; i < masked.coeffs.size(); ++i) {
      masked.coeffs[i] *= mask.values[i];
    }
    result.params.phi_after[c] = low_freq_percentage(masked, grid, opts.low_freq_threshold);

    const ScalarMap enhanced = ifft2(masked);
    result.params.dc_preclamp[c] = mean_of(enhanced.values);
    for (std::size_t i = 0; i < enhanced.values.size(); ++i) {
      result.image.planes[c].values[i] = clamp01(enhanced.values[i]);
    }
  }
  result.params.mu = (mean_of(img.planes[0].values) + mean_of(img.planes[1].values) +
                      mean_of(img.planes[2].values)) /
                     3.0;
  return result;
}

}  // namespace sfp
