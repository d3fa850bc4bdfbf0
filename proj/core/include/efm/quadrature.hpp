// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace efm {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int count);

  /// Affine map of the rule onto [a, b].
  GaussLegendre mapped(double a, double b) const;
};

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 30);

}  // namespace efm
