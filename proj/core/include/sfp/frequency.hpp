#pragma once

#include <array>
#include <complex>
#include <vector>

#include "sfp/image.hpp"

namespace sfp {

// Unshifted 2-D spectrum of one channel, DC at (0,0). The forward transform
// divides by H*W, so coeff(0,0) is the spatial mean.
struct Spectrum {
  int width = 0;
  int height = 0;
  std::vector<std::complex<double>> coeffs;  // row-major, size width*height

  std::complex<double>& at(int u, int v) {
    return coeffs[static_cast<std::size_t>(v) * width + u];
  }
  std::complex<double> at(int u, int v) const {
    return coeffs[static_cast<std::size_t>(v) * width + u];
  }
};

// Normalization of the radial frequency coordinate.
//   kAxis:     rho = sqrt((u'/W)^2 + (v'/H)^2), max ~ sqrt(2)/2 (default)
//   kDiagonal: rho = sqrt(u'^2 + v'^2) / sqrt(W^2 + H^2), max ~ 1/2
// u', v' are signed frequency indices (u' = u for u <= (W-1)/2, else u - W).
enum class RhoNorm { kAxis, kDiagonal };

struct RadialGrid {
  int width = 0;
  int height = 0;
  std::vector<double> rho;  // row-major, rho(0,0) = 0

  static RadialGrid make(int width, int height, RhoNorm norm = RhoNorm::kAxis);
  double at(int u, int v) const { return rho[static_cast<std::size_t>(v) * width + u]; }
};

// M(rho) = alpha - exp(-(rho/beta)^2) evaluated on a RadialGrid. Value at DC
// is alpha - 1; values increase with rho and stay strictly below alpha.
struct FreqMask {
  int width = 0;
  int height = 0;
  double alpha = 1.0;
  double beta = 0.0;
  std::vector<double> values;
};

struct BetaBounds {
  double lo = 1e-4;
  double hi = 0.75;
};

// Outcome of the bounded 1-D search for beta.
struct BetaSearch {
  double beta = 0.0;
  double objective = 0.0;  // |phi(masked) - target| at beta
  int evaluations = 0;
  bool hit_lower = false;
  bool hit_upper = false;
};

// Per-channel record of what the frequency stage did. dc_preclamp holds the
// spatial mean of each enhanced channel before the final clamp; the DC prior
// pins it to mu.
struct FdpParams {
  std::array<double, 3> alpha{};
  std::array<double, 3> beta{};
  double mu = 0.0;
  std::array<double, 3> dc_preclamp{};
  std::array<double, 3> phi_before{};
  std::array<double, 3> phi_after{};
  std::array<int, 3> beta_evaluations{};
  std::array<bool, 3> beta_hit_lower{};
  std::array<bool, 3> beta_hit_upper{};
};

struct FdpOptions {
  RhoNorm rho_norm = RhoNorm::kAxis;
  double low_freq_threshold = 0.001;
  double target_phi = 0.01;
  double beta_tol = 1e-4;
  BetaBounds bounds{};
};

// Forward transform, scaled by 1/(H*W). Throws DimensionError below the
// minimum size. Any width/height >= 8 is supported.
Spectrum fft2(const ScalarMap& channel);

// Inverse transform; returns the real part. Throws NumericalError if any
// sample's imaginary part exceeds 1e-9 in magnitude.
ScalarMap ifft2(const Spectrum& spec);

// alpha_C = mu / DC_C + 1 with mu = (DC_R + DC_G + DC_B) / 3 and DC_C the
// channel mean. Throws DegenerateInput when any channel mean < 1e-4.
std::array<double, 3> alpha_from_dc(const PlanarImage& img);

// Evaluates the mask on the grid. Throws ParamError on beta <= 0 or alpha < 1.
FreqMask build_mask(const RadialGrid& grid, double alpha, double beta);
FreqMask build_mask(int width, int height, double alpha, double beta);

// Phi = sum of |coeff| over bins with rho < thresh, divided by the total
// |coeff| sum; DC is always in the numerator. When no non-DC bin has
// rho < thresh, the numerator set becomes DC plus the 8 bins nearest in rho
// (ties broken row-major). Throws DegenerateInput on an all-zero spectrum.
double low_freq_percentage(const Spectrum& spec, const RadialGrid& grid, double thresh = 0.001);
double low_freq_percentage(const Spectrum& spec, double thresh = 0.001);

// Minimizes |phi(mask(beta) . spec) - target| over bounds via golden-section
// with parabolic refinement. At most 200 objective evaluations; terminates
// when the bracket is narrower than tol * (hi - lo). Phi of the masked
// spectrum is evaluated directly in the frequency domain.
BetaSearch optimize_beta(const Spectrum& spec, const RadialGrid& grid, double alpha,
                         double target = 0.01, double tol = 1e-4, BetaBounds bounds = {});
BetaSearch optimize_beta(const ScalarMap& channel, double alpha, double target = 0.01,
                         double tol = 1e-4, BetaBounds bounds = {});

struct EnhanceResult {
  PlanarImage image;  // clamped to [0,1]
  FdpParams params;
};

// Per channel: alpha from the DC prior, beta from the low-frequency
// objective, multiplicative mask in the frequency domain, inverse transform,
// clamp. Pre-clamp the DC of every output channel equals mu to ~1e-9.
EnhanceResult enhance(const PlanarImage& img, const FdpOptions& opts = {});

}  // namespace sfp
