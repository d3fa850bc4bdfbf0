// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "efm/fft.hpp"

namespace efm {

double entropy(std::span<const double> values, const Grid& grid, int* flagged) {
  double weight = 1.0;
  for (int i = 0; i < grid.dim(); ++i) weight *= grid.spacing();
  double sum = 0.0;
  int skipped = 0;
  for (double v : values) {
    if (v > 1e-14) {
      sum += v * std::log(v);
    } else if (v < -1e-14) {
      ++skipped;  // negative density: term undefined, flag and move on
    }
  }
  if (flagged) *flagged = skipped;
  return weight * sum;
}

double positivity_error(std::span<const double> values) {
  double abs_sum = 0.0;
  double sum = 0.0;
  for (double v : values) {
    abs_sum += std::abs(v);
    sum += v;
  }
  detail::require(abs_sum > 0.0, "positivity_error: all-zero input");
  return (abs_sum - sum) / abs_sum;
}

double lp_relative_error(std::span<const double> numeric,
                         std::span<const double> exact, Norm norm) {
  detail::require(numeric.size() == exact.size(), "lp_relative_error: size mismatch");
  double num = 0.0;
  double den = 0.0;
  switch (norm) {
    case Norm::l1:
      for (std::size_t i = 0; i < numeric.size(); ++i) {
        num += std::abs(numeric[i] - exact[i]);
        den += std::abs(exact[i]);
      }
      break;
    case Norm::l2:
      for (std::size_t i = 0; i < numeric.size(); ++i) {
        const double d = numeric[i] - exact[i];
        num += d * d;
        den += exact[i] * exact[i];
      }
      num = std::sqrt(num);
      den = std::sqrt(den);
      break;
    case Norm::linf:
      for (std::size_t i = 0; i < numeric.size(); ++i) {
        num = std::max(num, std::abs(numeric[i] - exact[i]));
        den = std::max(den, std::abs(exact[i]));
      }
      break;
  }
  detail::require(den > 0.0, "lp_relative_error: zero reference norm");
  return num / den;
}

std::vector<ConvergenceRow> convergence_table(std::span<const int> mode_counts,
                                              std::span<const double> errors) {
  detail::require(mode_counts.size() == errors.size(),
                  "convergence_table: size mismatch");
  detail::require(!mode_counts.empty(), "convergence_table: empty input");
  for (std::size_t i = 0; i + 1 < mode_counts.size(); ++i)
    detail::require(mode_counts[i + 1] == 2 * mode_counts[i],
                    "convergence_table: resolutions must form a doubling ladder");
  for (double e : errors)
    detail::require(e > 0.0, "convergence_table: errors must be positive");

  std::vector<ConvergenceRow> rows(mode_counts.size());
  for (std::size_t i = 0; i < mode_counts.size(); ++i) {
    rows[i].modes = mode_counts[i];
    rows[i].error = errors[i];
    if (i > 0) rows[i].rate = std::log2(errors[i - 1] / errors[i]);
  }
  return rows;
}

DiagnosticsRecord compute_diagnostics(const SpectralState& state,
                                      std::span<const double> values,
                                      const std::vector<double>* exact_nodes) {
  const Grid& grid = state.grid;
  double weight = 1.0;
  for (int i = 0; i < grid.dim(); ++i) weight *= grid.spacing();

  DiagnosticsRecord rec;
  rec.time = state.time;
  double min_value = values.empty() ? 0.0 : values[0];
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    const auto node = grid.node_at(i);
    rec.mass += v;
    double r2 = 0.0;
    for (int c = 0; c < grid.dim(); ++c) {
      rec.momentum[c] += v * node[c];
      r2 += node[c] * node[c];
    }
    rec.energy += v * r2;
    min_value = std::min(min_value, v);
  }
  rec.mass *= weight;
  rec.energy *= weight;
  for (int c = 0; c < grid.dim(); ++c) rec.momentum[c] *= weight;
  rec.min_value = min_value;
  rec.entropy = entropy(values, grid, &rec.negative_entropy_terms);
  rec.positivity_error = positivity_error(values);

  if (exact_nodes != nullptr) {
    rec.l1_error = lp_relative_error(values, *exact_nodes, Norm::l1);
    rec.l2_error = lp_relative_error(values, *exact_nodes, Norm::l2);
    rec.linf_error = lp_relative_error(values, *exact_nodes, Norm::linf);
  }
  return rec;
}

DiagnosticsRecord compute_diagnostics(const SpectralState& state,
                                      const std::vector<double>* exact_nodes) {
  const std::vector<double> values = inverse_dft(state);
  return compute_diagnostics(state, values, exact_nodes);
}

}  // namespace efm
