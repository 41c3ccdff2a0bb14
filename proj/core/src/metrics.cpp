#include "sfp/metrics.hpp"

#include <cmath>
#include <limits>

#include "sfp/color.hpp"
#include "sfp/errors.hpp"
#include "sfp/numeric.hpp"

namespace sfp {

double psnr(const PlanarImage& a, const PlanarImage& b) {
  if (a.width != b.width || a.height != b.height) {
    throw DimensionError("psnr: dimension mismatch");
  }
  std::vector<double> sq;
  sq.reserve(a.planes[0].values.size() * 3);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < a.planes[c].values.size(); ++i) {
      const double d = a.planes[c].values[i] - b.planes[c].values[i];
      sq.push_back(d * d);
    }
  }
  const double mse = mean_of(sq);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return -10.0 * std::log10(mse);
}

double uciqe(const PlanarImage& img, const std::array<double, 3>& coeffs) {
  const LabImage lab = rgb_to_lab(img);
  const std::size_t n = lab.l.values.size();

  // Chroma deviation term on chroma/100 so all three terms are O(1).
  std::vector<double> chroma(n), sat(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = lab.a.values[i];
    const double b = lab.b.values[i];
    const double c = std::sqrt(a * a + b * b);
    chroma[i] = c / 100.0;
    const double l = lab.l.values[i];
    const double denom = std::sqrt(c * c + l * l);
    sat[i] = denom > 1e-12 ? c / denom : 0.0;
  }
  const double mean_c = mean_of(chroma);
  std::vector<double> var(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = chroma[i] - mean_c;
    var[i] = d * d;
  }
  const double sigma_c = std::sqrt(mean_of(var));

  std::vector<double> l_norm(n);
  for (std::size_t i = 0; i < n; ++i) l_norm[i] = lab.l.values[i] / 100.0;
  const double contrast = quantile(l_norm, 0.99) - quantile(l_norm, 0.01);

  return coeffs[0] * sigma_c + coeffs[1] * contrast + coeffs[2] * mean_of(sat);
}

}  // namespace sfp
