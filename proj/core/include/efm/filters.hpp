// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <array>
#include <vector>

#include "efm/grid.hpp"

namespace efm {

enum class FilterKind { none, jackson, fejer };

/// One-dimensional modified Jackson weight
///   sigma_N(beta) = ((n+1-|beta|) cos(pi|beta|/(n+1))
///                    + sin(pi|beta|/(n+1)) cot(pi/(n+1))) / (n+1)
/// whose trigonometric kernel is non-negative. Throws for |beta| > n.
double jackson_1d(int half_width, int beta);

/// One-dimensional Fejer weight 1 - |beta|/(n+1). Throws for |beta| > n.
double fejer_1d(int half_width, int beta);

/// Per-mode multipliers sigma_N(k); the d-dimensional weight of a mode is the
/// product of its per-component 1D weights. `none` is the identity.
class FilterWeights {
 public:
  static FilterWeights make(FilterKind kind, int half_width);

  FilterKind kind() const { return kind_; }
  int half_width() const { return half_width_; }

  /// sigma_N(beta); even in beta, in [0, 1], equals 1 at beta = 0 for the
  /// smoothing kinds.
  double weight_1d(int beta) const;

  /// Tensor-product weight of a mode tuple.
  double tensor_weight(const std::array<int, 3>& k, int dim) const;

  /// All d-dimensional weights in the grid's lexicographic mode order.
  std::vector<double> mode_weights(const Grid& grid) const;

 private:
  FilterWeights(FilterKind kind, int half_width, std::vector<double> w)
      : kind_(kind), half_width_(half_width), weights_(std::move(w)) {}
  FilterKind kind_;
  int half_width_;
  std::vector<double> weights_;  // indexed by |beta| in [0, n]
};

/// Result of sampling the smoothing kernel chi_N^sigma over the box.
struct KernelCertification {
  double min_value = 0.0;
  std::array<double, 3> argmin{0.0, 0.0, 0.0};
  bool nonnegative(double tolerance = 1e-12) const { return min_value >= -tolerance; }
};

/// Evaluates chi_N^sigma(v) = sum_k sigma_N(k) E_k(v) on a uniform grid of
/// (oversample*N)^d points in the box and reports the minimum. The kernel is
/// a tensor product, so the evaluation is factorized per dimension.
/// oversample must be >= 4. A negative minimum is reported, never thrown.
KernelCertification certify_kernel_nonnegative(const FilterWeights& weights,
                                               int oversample, int dim,
                                               double box_half_width);

}  // namespace efm
