#include "sfp/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "sfp/errors.hpp"

namespace sfp {

double compensated_sum(const double* data, std::size_t n) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = data[i];
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

double compensated_sum(const std::vector<double>& v) {
  return compensated_sum(v.data(), v.size());
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) throw ParamError("mean of empty range");
  return compensated_sum(v) / static_cast<double>(v.size());
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ParamError("quantile of empty range");
  if (q < 0.0 || q > 1.0) throw ParamError("quantile fraction outside [0,1]");
  const auto n = values.size();
  auto idx = static_cast<std::size_t>(std::llround(q * static_cast<double>(n - 1)));
  if (idx >= n) idx = n - 1;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(idx),
                   values.end());
  return values[idx];
}

}  // namespace sfp
