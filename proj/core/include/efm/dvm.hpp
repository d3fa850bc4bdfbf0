// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "efm/grid.hpp"

namespace efm {

/// Brute-force reconstruction of the discrete-velocity form of the method.
/// Everything here is test-harness grade: small grids only (guarded), never
/// used inside production solves.
///
/// G(y, z) = sum_{i,j in K} B(i,j) E_{-i}(y) E_{-j}(z) evaluated at all pairs
/// of collocation differences, where the difference lattice wraps onto X.
struct GTable {
  int dim = 0;
  int modes = 0;
  bool filtered = false;
  std::vector<double> values;  // (N^d)^2 row-major over (y index, z index)

  double at(std::size_t y, std::size_t z, std::size_t count) const {
    return values[y * count + z];
  }
};

/// Memory guard: refuses N > 9 in 2D and N > 5 in 3D.
GTable build_g(const Grid& grid, std::span<const double> dense_kernel,
               bool filtered = false);

/// Quadruple-indexed coefficients
///   A^{rs}_{pq} = N^{-2d} 1_N(r+s-p-q) G(p-s, q-s),
/// stored sparsely (s is determined mod N by p, q, r).
struct DvmCoefficients {
  struct Entry {
    std::uint32_t p, q, r, s;
    double value;
  };
  int dim = 0;
  int modes = 0;
  std::vector<Entry> entries;
};

DvmCoefficients build_a(const GTable& g_table, const Grid& grid);

/// Q_r = sum_{p,q,s} A^{rs}_{pq} (F_p F_q - F_r F_s).
std::vector<double> q_dvm(std::span<const double> values,
                          const DvmCoefficients& coefficients);

/// Evaluate the trigonometric polynomial G(y, z0) at arbitrary points y for a
/// fixed z0 (both in the box). Works at any resolution since no table is
/// materialized.
std::vector<double> g_slice(const Grid& grid, std::span<const double> dense_kernel,
                            const std::array<double, 3>& z0,
                            std::span<const std::array<double, 3>> y_points);

}  // namespace efm
