#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sfp {

// Neumaier-compensated sum over a fixed left-to-right order. All reductions in
// the library go through this so parallel and serial paths stay bit-identical.
double compensated_sum(const double* data, std::size_t n);
double compensated_sum(const std::vector<double>& v);

double mean_of(const std::vector<double>& v);

// Nearest-rank quantile (index round(q*(n-1)) of the sorted values), q in [0,1].
double quantile(std::vector<double> values, double q);

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// splitmix64 stream mapped to [0,1). Used for all seeded synthesis so results
// do not depend on the standard library's distribution implementations.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline double rand_unit(std::uint64_t& state) {
  return static_cast<double>(splitmix64_next(state) >> 11) * 0x1.0p-53;
}

}  // namespace sfp
