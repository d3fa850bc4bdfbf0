// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "efm/fft.hpp"
#include "efm/grid.hpp"
#include "efm/kernel.hpp"

namespace efm {

/// The four discretizations of the collision operator. They share one
/// quadratic form
///   Q_hat_k = sum_{l,m in K} ind(l+m-k) (B*(l,m) - B*(m,m)) F_l F_m
/// and differ in the indicator (strict for the Galerkin method, aliased
/// mod N otherwise) and in the kernel filter (none / Jackson / Fejer).
enum class Method { fgm, fcm, efm, efm_fejer };

FilterKind method_filter(Method method);
/// True when the variant uses the aliased indicator 1_N(l+m-k).
bool method_aliased(Method method);
std::string method_name(Method method);
Method method_from_name(const std::string& name);

struct GainLoss {
  std::vector<Cplx> gain;
  std::vector<Cplx> loss;
};

/// Kernel view over a dense N^d x N^d mode matrix; used by oracles and the
/// DVM reconstruction.
class DenseKernelView {
 public:
  DenseKernelView(std::span<const double> dense, std::size_t count)
      : dense_(dense), count_(count) {
    detail::require(dense.size() == count * count, "DenseKernelView: size mismatch");
  }
  double entry(std::size_t l, std::size_t m) const { return dense_[l * count_ + m]; }
  double diagonal(std::size_t m) const { return dense_[m * count_ + m]; }

 private:
  std::span<const double> dense_;
  std::size_t count_;
};

/// Adapter giving the 3D table kernel the entry/diagonal view interface.
class Filtered3DView {
 public:
  Filtered3DView(const Filtered3D& kernel, const Grid& grid)
      : kernel_(&kernel), grid_(&grid) {}
  double entry(std::size_t l, std::size_t m) const {
    return kernel_->entry(l, m, *grid_);
  }
  double diagonal(std::size_t m) const { return kernel_->diagonal(m); }

 private:
  const Filtered3D* kernel_;
  const Grid* grid_;
};

namespace detail_collision {
/// Per-axis index tables for l+m (aliased: symmetric-mod position; strict:
/// position or -1 when out of K).
std::vector<int> aliased_sum_table(int modes);
std::vector<int> strict_sum_table(int modes);
}  // namespace detail_collision

/// Reference evaluator: the O(N^{2d}) double sum with kernel entries fetched
/// one by one. Returns the gain and loss parts; Q_hat = gain - loss.
template <class KernelView>
GainLoss gain_loss_direct(const Grid& grid, std::span<const Cplx> modes,
                          const KernelView& kernel, bool aliased) {
  detail::require(modes.size() == grid.size(), "collision: state/grid size mismatch");
  const int N = grid.modes();
  const std::size_t count = grid.size();
  const std::vector<int> table = aliased ? detail_collision::aliased_sum_table(N)
                                         : detail_collision::strict_sum_table(N);
  GainLoss out;
  out.gain.assign(count, Cplx{0.0, 0.0});
  out.loss.assign(count, Cplx{0.0, 0.0});

  const int d = grid.dim();
  for (std::size_t l = 0; l < count; ++l) {
    const auto lk = grid.mode_at(l);
    for (std::size_t m = 0; m < count; ++m) {
      const auto mk = grid.mode_at(m);
      // componentwise position of l+m under the variant's indicator
      std::size_t k = 0;
      bool keep = true;
      for (int i = 0; i < d; ++i) {
        const int pos = table[static_cast<std::size_t>(lk[i] + grid.half_width()) * N +
                              (mk[i] + grid.half_width())];
        if (pos < 0) {
          keep = false;
          break;
        }
        k = k * N + static_cast<std::size_t>(pos);
      }
      if (!keep) continue;
      const Cplx prod = modes[l] * modes[m];
      out.gain[k] += kernel.entry(l, m) * prod;
      out.loss[k] += kernel.diagonal(m) * prod;
    }
  }
  return out;
}

template <class KernelView>
std::vector<Cplx> eval_collision_direct(const Grid& grid, std::span<const Cplx> modes,
                                        const KernelView& kernel, bool aliased) {
  GainLoss gl = gain_loss_direct(grid, modes, kernel, aliased);
  for (std::size_t i = 0; i < gl.gain.size(); ++i) gl.gain[i] -= gl.loss[i];
  return std::move(gl.gain);
}

/// FFT-accelerated 2D evaluation from the low-rank factors. Aliased variants
/// use length-N circular convolutions (no zero padding); the Galerkin variant
/// zero-pads to the next fast size >= 2N-1 and restricts back to K.
GainLoss gain_loss_fast_2d(const Grid& grid, std::span<const Cplx> modes,
                           const Filtered2D& kernel, bool aliased);
std::vector<Cplx> eval_collision_fast(const Grid& grid, std::span<const Cplx> modes,
                                      const Filtered2D& kernel, Method method);

/// 3D evaluation: loss by a single FFT convolution, gain by the direct double
/// sum over K x K with O(1) table lookups (reorganized over s = l+m so each
/// inner pass stays in one table row; exact pair and Hermitian symmetries
/// halve the work twice when the input is Hermitian).
GainLoss gain_loss_3d(const Grid& grid, std::span<const Cplx> modes,
                      const Filtered3D& kernel, bool aliased);
std::vector<Cplx> eval_collision_3d(const Grid& grid, std::span<const Cplx> modes,
                                    const Filtered3D& kernel, Method method);

/// Variant-agnostic facade used by the time stepper: dF_hat/dt = Q_hat[F_hat].
class CollisionOperator {
 public:
  CollisionOperator(const Grid& grid, Method method, FilteredKernel kernel);

  std::vector<Cplx> apply(std::span<const Cplx> modes) const;
  GainLoss split(std::span<const Cplx> modes) const;
  SpectralState rhs(const SpectralState& state) const;

  const Grid& grid() const { return grid_; }
  Method method() const { return method_; }

 private:
  Grid grid_;
  Method method_;
  FilteredKernel kernel_;
};

}  // namespace efm
