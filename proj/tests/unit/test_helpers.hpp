// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "efm/fft.hpp"
#include "efm/grid.hpp"
#include "efm/rng.hpp"

namespace efm::test {

/// Direct O(N^{2d}) evaluation of the transform pair; the independent oracle
/// for the FFT-backed path. Exponents are reduced mod N in integer arithmetic
/// so every phase is one of N exact unit roots.
inline std::vector<Cplx> direct_forward(const Grid& grid,
                                        std::span<const Cplx> values) {
  const int N = grid.modes();
  const std::size_t count = grid.size();
  std::vector<Cplx> roots(N);
  for (int m = 0; m < N; ++m)
    roots[m] = std::polar(1.0, -2.0 * std::numbers::pi * m / N);

  std::vector<Cplx> out(count, Cplx{0.0, 0.0});
  for (std::size_t k = 0; k < count; ++k) {
    const auto km = grid.mode_at(k);
    Cplx sum{0.0, 0.0};
    for (std::size_t p = 0; p < count; ++p) {
      const auto pm = grid.mode_at(p);
      long dot = 0;
      for (int i = 0; i < grid.dim(); ++i) dot += static_cast<long>(km[i]) * pm[i];
      sum += values[p] * roots[((dot % N) + N) % N];
    }
    out[k] = sum / static_cast<double>(count);
  }
  return out;
}

inline std::vector<Cplx> direct_inverse(const Grid& grid,
                                        std::span<const Cplx> modes) {
  const int N = grid.modes();
  const std::size_t count = grid.size();
  std::vector<Cplx> roots(N);
  for (int m = 0; m < N; ++m)
    roots[m] = std::polar(1.0, 2.0 * std::numbers::pi * m / N);

  std::vector<Cplx> out(count, Cplx{0.0, 0.0});
  for (std::size_t p = 0; p < count; ++p) {
    const auto pm = grid.mode_at(p);
    Cplx sum{0.0, 0.0};
    for (std::size_t k = 0; k < count; ++k) {
      const auto km = grid.mode_at(k);
      long dot = 0;
      for (int i = 0; i < grid.dim(); ++i) dot += static_cast<long>(km[i]) * pm[i];
      sum += modes[k] * roots[((dot % N) + N) % N];
    }
    out[p] = sum;
  }
  return out;
}

inline std::vector<double> random_values(Rng& rng, std::size_t count, double lo = 0.0,
                                         double hi = 1.0) {
  std::vector<double> out(count);
  for (double& v : out) v = rng.uniform(lo, hi);
  return out;
}

inline double max_abs_diff(std::span<const Cplx> a, std::span<const Cplx> b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

inline double max_abs(std::span<const Cplx> a) {
  double out = 0.0;
  for (const Cplx& v : a) out = std::max(out, std::abs(v));
  return out;
}

inline double max_abs(std::span<const double> a) {
  double out = 0.0;
  for (double v : a) out = std::max(out, std::abs(v));
  return out;
}

}  // namespace efm::test
