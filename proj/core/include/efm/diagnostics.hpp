// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <array>
#include <limits>
#include <span>
#include <vector>

#include "efm/grid.hpp"

namespace efm {

/// Per-step observables. Moments carry the quadrature weight h^d so mass ~ 1
/// is physically readable; the lp errors are pure (unweighted) node sums.
struct DiagnosticsRecord {
  double time = 0.0;
  double mass = 0.0;
  std::array<double, 3> momentum{0.0, 0.0, 0.0};
  double energy = 0.0;
  double entropy = 0.0;
  double positivity_error = 0.0;
  double min_value = 0.0;
  int negative_entropy_terms = 0;  // flagged F_r < -1e-14 skipped in entropy
  double l1_error = std::numeric_limits<double>::quiet_NaN();
  double l2_error = std::numeric_limits<double>::quiet_NaN();
  double linf_error = std::numeric_limits<double>::quiet_NaN();
};

/// Discrete entropy eta = h^d sum_r F_r ln F_r with the 0 ln 0 = 0
/// convention: values in [-1e-14, 1e-14] contribute zero; values below
/// -1e-14 are skipped and counted in `flagged`.
double entropy(std::span<const double> values, const Grid& grid,
               int* flagged = nullptr);

/// (sum |F| - sum F) / sum |F|, in [0, 2]; zero iff no negative values.
/// Throws on an all-zero input.
double positivity_error(std::span<const double> values);

enum class Norm { l1, l2, linf };

/// ||F - f||_p / ||f||_p with plain node sums. Throws on a zero denominator.
double lp_relative_error(std::span<const double> numeric,
                         std::span<const double> exact, Norm norm);

struct ConvergenceRow {
  int modes = 0;
  double error = 0.0;
  double rate = std::numeric_limits<double>::quiet_NaN();  // vs previous row
};

/// Rates log2(e_N / e_2N) down a doubling ladder of resolutions.
std::vector<ConvergenceRow> convergence_table(std::span<const int> mode_counts,
                                              std::span<const double> errors);

/// Full record from a state; `exact_nodes` (optional) are reference values on
/// the grid for the error columns.
DiagnosticsRecord compute_diagnostics(const SpectralState& state,
                                      const std::vector<double>* exact_nodes = nullptr);
DiagnosticsRecord compute_diagnostics(const SpectralState& state,
                                      std::span<const double> values,
                                      const std::vector<double>* exact_nodes = nullptr);

}  // namespace efm
