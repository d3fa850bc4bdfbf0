// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <array>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "efm/filters.hpp"
#include "efm/grid.hpp"

namespace efm {

/// Collision models with a constant kernel (Maxwell molecules):
/// B(g, omega) = 1/(2 pi) in 2D and 1/(4 pi) in 3D.
enum class MoleculeModel { maxwell_2d, maxwell_3d };

struct KernelSpec {
  int dim = 2;
  MoleculeModel model = MoleculeModel::maxwell_2d;
  int modes = 0;              // odd N of the target grid
  double support_radius = 6.0;
  double box_half_width = 0.0;
  int angular_nodes = 8;      // M: angular quadrature nodes in [0, pi/2), 2D
  int radial_nodes = 64;      // Gauss-Legendre nodes on [0, R], 3D
  FilterKind filter = FilterKind::none;  // applied downstream, not cached

  static KernelSpec for_grid(const Grid& grid, int angular_nodes = 8,
                             int radial_nodes = 64);
  void validate() const;
};

/// psi_R(l, e) = integral_{-R}^{R} E_l(rho e) d rho = 2R Sinc(pi R (l.e) / T)
/// for a unit vector e, with Sinc(x) = sin(x)/x, Sinc(0) = 1.
double psi_r(std::span<const int> l, std::span<const double> e, double support_radius,
             double box_half_width);
double psi_r(double l_dot_e, double support_radius, double box_half_width);

/// Low-rank factorization of the 2D Maxwell kernel modes. With midpoint
/// angles theta_t on [0, pi/2),
///   beta_t(l)  = psi_R(l, e_{theta_t}),
///   gamma_t(l) = psi_R(l, e_{theta_t + pi/2}),
/// the kernel entry is the symmetrized quadrature
///   B_hat(l, m) = w sum_t [beta_t(l) gamma_t(m) + gamma_t(l) beta_t(m)],
/// w = Btilde * pi / (2M), which is exactly the 2M-node midpoint rule for the
/// angular integral over [0, pi) of the pi-periodic integrand. All entries
/// are real and symmetric in l <-> m and l <-> -l by construction.
struct KernelFactors2D {
  int modes = 0;          // N (odd)
  int angular_nodes = 0;  // M
  double term_weight = 0.0;
  std::vector<double> beta;   // angular_nodes x N^2, term-major
  std::vector<double> gamma;  // same layout

  std::size_t mode_count() const { return static_cast<std::size_t>(modes) * modes; }
  double entry(std::size_t l, std::size_t m) const;
  /// D_m = B_hat(m, m).
  std::vector<double> diagonal() const;
};

KernelFactors2D build_kernel_2d(const KernelSpec& spec);

/// Quadrature weight per symmetrized term, Btilde * pi / (2M) with
/// Btilde = 1/pi for 2D Maxwell molecules.
double kernel_2d_term_weight(int angular_nodes);

/// Scalar table for the 3D Maxwell kernel in classical form. The sphere
/// integral of a plane wave and a radial average reduce the kernel entry to
///   B_hat(l, m) = Phi(|l+m|, |l-m|),
///   Phi(a, b)   = 4 pi integral_0^R r^2 Sinc(pi r a / 2T) Sinc(pi r b / 2T) dr,
/// evaluated by Gauss-Legendre quadrature and tabulated over the integer
/// squared lengths a^2, b^2 <= 3 (N-1)^2.
struct KernelTable3D {
  int modes = 0;
  int max_sq = 0;  // 3 (N-1)^2
  double support_radius = 0.0;
  double box_half_width = 0.0;
  std::vector<double> phi;  // (max_sq+1)^2 row-major over (a^2, b^2)

  double phi_at(int a_sq, int b_sq) const {
    return phi[static_cast<std::size_t>(a_sq) * (max_sq + 1) + b_sq];
  }
  double entry(const std::array<int, 3>& l, const std::array<int, 3>& m) const;
};

KernelTable3D build_kernel_3d(const KernelSpec& spec);

/// 2D kernel with filter weights folded into the factors:
/// B_hat^sigma(l,m) = sigma(l) sigma(m) B_hat(l,m).
struct Filtered2D {
  KernelFactors2D factors;   // beta/gamma carry sigma
  std::vector<double> diag;  // D_m = B_hat^sigma(m, m)
  FilterKind filter = FilterKind::none;
  int modes = 0;

  double entry(std::size_t l, std::size_t m) const { return factors.entry(l, m); }
  double diagonal(std::size_t m) const { return diag[m]; }
};

/// 3D kernel with the weights applied lazily at lookup.
struct Filtered3D {
  std::shared_ptr<const KernelTable3D> table;
  std::vector<double> sigma;  // per lexicographic mode
  std::vector<double> diag;   // sigma(m)^2 Phi(|2m|, 0)
  FilterKind filter = FilterKind::none;
  int modes = 0;

  double entry(std::size_t l, std::size_t m, const Grid& grid) const {
    return sigma[l] * sigma[m] * table->entry(grid.mode_at(l), grid.mode_at(m));
  }
  double diagonal(std::size_t m) const { return diag[m]; }
};

Filtered2D apply_filter(const KernelFactors2D& factors, const FilterWeights& weights);
Filtered3D apply_filter(std::shared_ptr<const KernelTable3D> table,
                        const FilterWeights& weights);

/// Dimension-erased handle used by the simulation driver.
class FilteredKernel {
 public:
  explicit FilteredKernel(Filtered2D k) : impl_(std::move(k)) {}
  explicit FilteredKernel(Filtered3D k) : impl_(std::move(k)) {}

  int dim() const { return std::holds_alternative<Filtered2D>(impl_) ? 2 : 3; }
  const Filtered2D& as_2d() const { return std::get<Filtered2D>(impl_); }
  const Filtered3D& as_3d() const { return std::get<Filtered3D>(impl_); }

 private:
  std::variant<Filtered2D, Filtered3D> impl_;
};

/// Dense N^d x N^d matrix of kernel modes (row l, column m) for small grids;
/// refuses to materialize more than `max_entries` values.
std::vector<double> assemble_dense(const Filtered2D& kernel,
                                   std::size_t max_entries = 4'000'000);
std::vector<double> assemble_dense(const Filtered3D& kernel, const Grid& grid,
                                   std::size_t max_entries = 4'000'000);

}  // namespace efm
