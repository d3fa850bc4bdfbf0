// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "efm/common.hpp"

namespace efm {

/// Which truncated-operator representation a kernel is built from. The two
/// forms carry different anti-aliasing bounds on the velocity box.
enum class KernelForm { carleman, classical };

/// Uniform velocity grid on [-T,T]^d with N points per dimension and the
/// matching square set of Fourier modes K = [-n,n]^d, N = 2n+1.
///
/// The internal mode count is always odd. A requested even N is reduced to
/// N-1 at construction (dropping the unmatched -N/2 modes), so every formula
/// downstream can assume N = 2n+1. Mode and node arrays are stored in
/// lexicographic order over the symmetric index tuple.
class Grid {
 public:
  /// Throws InvalidArgument for unsupported dimensions, N < 3, non-positive
  /// R/T, or a velocity box smaller than the anti-aliasing bound of `form`
  /// (unless `allow_undersized_box` is set). If `box_half_width` is empty the
  /// default T = ceil_2dec(bound(form) * R) is used.
  Grid(int dim, int requested_modes, double support_radius,
       std::optional<double> box_half_width = std::nullopt,
       KernelForm form = KernelForm::carleman, bool allow_undersized_box = false);

  int dim() const { return dim_; }
  /// Effective (odd) number of points/modes per dimension.
  int modes() const { return 2 * half_width_ + 1; }
  /// n in N = 2n+1.
  int half_width() const { return half_width_; }
  /// The N the caller asked for (possibly even).
  int requested_modes() const { return requested_modes_; }
  /// Velocity box half-width T.
  double box() const { return box_half_width_; }
  /// Support/truncation radius R.
  double radius() const { return support_radius_; }
  /// Grid spacing h = 2T/N.
  double spacing() const { return 2.0 * box_half_width_ / modes(); }
  KernelForm kernel_form() const { return form_; }

  /// Total number of nodes (= number of modes) N^d.
  std::size_t size() const;

  /// Lexicographic linear index of a symmetric mode tuple (components beyond
  /// dim() must be 0 and are ignored).
  std::size_t linear_index(const std::array<int, 3>& k) const;
  /// Inverse of linear_index; unused trailing components are 0.
  std::array<int, 3> mode_at(std::size_t index) const;
  /// Velocity node h*k for the lexicographic index.
  std::array<double, 3> node_at(std::size_t index) const;
  /// Linear index of the reflected tuple -k.
  std::size_t reflected_index(std::size_t index) const;

  /// Anti-aliasing lower bound on T for a given kernel form:
  /// (3*sqrt(2)+1)/4 * R for the Carleman form, (3+sqrt(2))/4 * R for the
  /// classical form.
  static double dealias_bound(KernelForm form, double support_radius);
  /// Default box half-width: the bound rounded up to 2 decimals.
  static double default_box(KernelForm form, double support_radius);

  bool operator==(const Grid& other) const = default;

 private:
  int dim_;
  int half_width_;
  int requested_modes_;
  double support_radius_;
  double box_half_width_;
  KernelForm form_;
};

/// Componentwise symmetric modulo: each output component is congruent to the
/// input mod N and lies in [-n, n]. N must be odd.
int symmetric_mod(int value, int modes);
std::array<int, 3> symmetric_mod(const std::array<int, 3>& k, int modes);

/// Drops every mode with a component equal to -N/2 from an even-N mode array
/// (lexicographic over [-N/2, N/2-1]^d) and returns the odd (N-1)-indexed
/// array. The surviving coefficients are unchanged.
std::vector<Cplx> reduce_even_modes(const std::vector<Cplx>& modes, int even_modes,
                                    int dim);

/// Complex Fourier coefficients F_hat_k over K plus the simulation time.
/// The point-value view is obtained through inverse_dft (fft.hpp).
struct SpectralState {
  Grid grid;
  std::vector<Cplx> modes;  // lexicographic over K
  double time = 0.0;

  SpectralState(const Grid& g, std::vector<Cplx> m, double t = 0.0)
      : grid(g), modes(std::move(m)), time(t) {}
  explicit SpectralState(const Grid& g)
      : grid(g), modes(g.size(), Cplx{0.0, 0.0}) {}

  /// Largest relative deviation from Hermitian symmetry,
  /// max_k |F_{-k} - conj(F_k)| / max_k |F_k|.
  double hermitian_defect() const;
  /// Projects the coefficients onto the Hermitian-symmetric subspace,
  /// F_k <- (F_k + conj(F_{-k})) / 2, which keeps the collocation values real.
  void symmetrize();
};

}  // namespace efm
