// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/kernel.hpp"

#include <cmath>
#include <numbers>

#include "efm/quadrature.hpp"

namespace efm {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

/// Carleman-form constant Btilde = 2^{d-1} B |y+z|^{2-d} for Maxwell
/// molecules in 2D: 2 * 1/(2 pi) = 1/pi.
constexpr double kBtilde2D = 1.0 / std::numbers::pi;

}  // namespace

KernelSpec KernelSpec::for_grid(const Grid& grid, int angular_nodes, int radial_nodes) {
  KernelSpec spec;
  spec.dim = grid.dim();
  spec.model = grid.dim() == 2 ? MoleculeModel::maxwell_2d : MoleculeModel::maxwell_3d;
  spec.modes = grid.modes();
  spec.support_radius = grid.radius();
  spec.box_half_width = grid.box();
  spec.angular_nodes = angular_nodes;
  spec.radial_nodes = radial_nodes;
  return spec;
}

void KernelSpec::validate() const {
  detail::require(dim == 2 || dim == 3, "KernelSpec: dim must be 2 or 3");
  detail::require((dim == 2) == (model == MoleculeModel::maxwell_2d),
                  "KernelSpec: model does not match the dimension");
  detail::require(modes >= 3 && modes % 2 == 1, "KernelSpec: modes must be odd >= 3");
  detail::require(support_radius > 0.0 && box_half_width > 0.0,
                  "KernelSpec: R and T must be positive");
  if (dim == 2)
    detail::require(angular_nodes >= 1, "KernelSpec: need at least one angular node");
  else
    detail::require(radial_nodes >= 8, "KernelSpec: need at least 8 radial nodes");
}

double psi_r(double l_dot_e, double support_radius, double box_half_width) {
  const double x = std::numbers::pi * support_radius * l_dot_e / box_half_width;
  return 2.0 * support_radius * sinc(x);
}

double psi_r(std::span<const int> l, std::span<const double> e, double support_radius,
             double box_half_width) {
  detail::require(l.size() == e.size(), "psi_r: dimension mismatch");
  double dot = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    dot += l[i] * e[i];
    norm += e[i] * e[i];
  }
  detail::require(std::abs(norm - 1.0) < 1e-10, "psi_r: direction must be a unit vector");
  return psi_r(dot, support_radius, box_half_width);
}

double KernelFactors2D::entry(std::size_t l, std::size_t m) const {
  const std::size_t count = mode_count();
  double sum = 0.0;
  for (int t = 0; t < angular_nodes; ++t) {
    const std::size_t off = static_cast<std::size_t>(t) * count;
    sum += beta[off + l] * gamma[off + m] + gamma[off + l] * beta[off + m];
  }
  return term_weight * sum;
}

std::vector<double> KernelFactors2D::diagonal() const {
  const std::size_t count = mode_count();
  std::vector<double> diag(count, 0.0);
  for (int t = 0; t < angular_nodes; ++t) {
    const std::size_t off = static_cast<std::size_t>(t) * count;
    for (std::size_t m = 0; m < count; ++m)
      diag[m] += 2.0 * term_weight * beta[off + m] * gamma[off + m];
  }
  return diag;
}

double kernel_2d_term_weight(int angular_nodes) {
  return kBtilde2D * std::numbers::pi / (2.0 * angular_nodes);
}

KernelFactors2D build_kernel_2d(const KernelSpec& spec) {
  spec.validate();
  detail::require(spec.dim == 2, "build_kernel_2d: spec is not two-dimensional");

  const int N = spec.modes;
  const int n = (N - 1) / 2;
  const int M = spec.angular_nodes;
  const double R = spec.support_radius;
  const double T = spec.box_half_width;

  KernelFactors2D out;
  out.modes = N;
  out.angular_nodes = M;
  // Midpoint rule on [0, pi/2) plus the symmetrized partner term equals the
  // 2M-node midpoint rule for the full angular integral on [0, pi).
  out.term_weight = kernel_2d_term_weight(M);
  const std::size_t count = out.mode_count();
  out.beta.resize(static_cast<std::size_t>(M) * count);
  out.gamma.resize(static_cast<std::size_t>(M) * count);

#pragma omp parallel for num_threads(max_threads()) schedule(static)
  for (int t = 0; t < M; ++t) {
    const double theta = (t + 0.5) * (std::numbers::pi / 2.0) / M;
    const double ex = std::cos(theta);
    const double ey = std::sin(theta);
    const std::size_t off = static_cast<std::size_t>(t) * count;
    for (int k1 = -n; k1 <= n; ++k1)
      for (int k2 = -n; k2 <= n; ++k2) {
        const std::size_t idx =
            static_cast<std::size_t>(k1 + n) * N + static_cast<std::size_t>(k2 + n);
        out.beta[off + idx] = psi_r(k1 * ex + k2 * ey, R, T);
        // e_{theta + pi/2} = (-sin, cos)
        out.gamma[off + idx] = psi_r(-k1 * ey + k2 * ex, R, T);
      }
  }
  return out;
}

double KernelTable3D::entry(const std::array<int, 3>& l,
                            const std::array<int, 3>& m) const {
  int a_sq = 0;
  int b_sq = 0;
  for (int i = 0; i < 3; ++i) {
    const int s = l[i] + m[i];
    const int d = l[i] - m[i];
    a_sq += s * s;
    b_sq += d * d;
  }
  return phi_at(a_sq, b_sq);
}

KernelTable3D build_kernel_3d(const KernelSpec& spec) {
  spec.validate();
  detail::require(spec.dim == 3, "build_kernel_3d: spec is not three-dimensional");

  const int N = spec.modes;
  const double R = spec.support_radius;
  const double T = spec.box_half_width;
  KernelTable3D out;
  out.modes = N;
  out.max_sq = 3 * (N - 1) * (N - 1);
  out.support_radius = R;
  out.box_half_width = T;

  const GaussLegendre rule = GaussLegendre(spec.radial_nodes).mapped(0.0, R);
  const int nodes = spec.radial_nodes;
  const int W = out.max_sq + 1;

  // s[a2 * nodes + j] = Sinc(pi r_j sqrt(a2) / (2T))
  std::vector<double> s(static_cast<std::size_t>(W) * nodes);
  std::vector<double> c(nodes);
  for (int j = 0; j < nodes; ++j)
    c[j] = 4.0 * std::numbers::pi * rule.weights[j] * rule.nodes[j] * rule.nodes[j];
  for (int a2 = 0; a2 < W; ++a2) {
    const double len = std::sqrt(static_cast<double>(a2));
    for (int j = 0; j < nodes; ++j)
      s[static_cast<std::size_t>(a2) * nodes + j] =
          sinc(std::numbers::pi * rule.nodes[j] * len / (2.0 * T));
  }

  out.phi.assign(static_cast<std::size_t>(W) * W, 0.0);
#pragma omp parallel for num_threads(max_threads()) schedule(dynamic, 16)
  for (int a2 = 0; a2 < W; ++a2) {
    const double* sa = &s[static_cast<std::size_t>(a2) * nodes];
    for (int b2 = a2; b2 < W; ++b2) {
      const double* sb = &s[static_cast<std::size_t>(b2) * nodes];
      double sum = 0.0;
      for (int j = 0; j < nodes; ++j) sum += c[j] * sa[j] * sb[j];
      out.phi[static_cast<std::size_t>(a2) * W + b2] = sum;
      out.phi[static_cast<std::size_t>(b2) * W + a2] = sum;
    }
  }
  return out;
}

Filtered2D apply_filter(const KernelFactors2D& factors, const FilterWeights& weights) {
  const int N = factors.modes;
  detail::require(2 * weights.half_width() + 1 == N,
                  "apply_filter: filter half-width does not match the kernel");
  Filtered2D out;
  out.factors = factors;
  out.filter = weights.kind();
  out.modes = N;

  const int n = weights.half_width();
  const std::size_t count = factors.mode_count();
  std::vector<double> sigma(count);
  for (int k1 = -n; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2)
      sigma[static_cast<std::size_t>(k1 + n) * N + (k2 + n)] =
          weights.weight_1d(k1) * weights.weight_1d(k2);

  for (int t = 0; t < factors.angular_nodes; ++t) {
    const std::size_t off = static_cast<std::size_t>(t) * count;
    for (std::size_t i = 0; i < count; ++i) {
      out.factors.beta[off + i] *= sigma[i];
      out.factors.gamma[off + i] *= sigma[i];
    }
  }
  out.diag = out.factors.diagonal();
  return out;
}

Filtered3D apply_filter(std::shared_ptr<const KernelTable3D> table,
                        const FilterWeights& weights) {
  detail::require(table != nullptr, "apply_filter: null kernel table");
  const int N = table->modes;
  detail::require(2 * weights.half_width() + 1 == N,
                  "apply_filter: filter half-width does not match the kernel");
  const int n = weights.half_width();

  Filtered3D out;
  out.table = std::move(table);
  out.filter = weights.kind();
  out.modes = N;

  const std::size_t count =
      static_cast<std::size_t>(N) * static_cast<std::size_t>(N) * N;
  out.sigma.resize(count);
  out.diag.resize(count);
  std::size_t idx = 0;
  for (int k1 = -n; k1 <= n; ++k1)
    for (int k2 = -n; k2 <= n; ++k2)
      for (int k3 = -n; k3 <= n; ++k3, ++idx) {
        const double sig =
            weights.weight_1d(k1) * weights.weight_1d(k2) * weights.weight_1d(k3);
        out.sigma[idx] = sig;
        const int a_sq = 4 * (k1 * k1 + k2 * k2 + k3 * k3);
        out.diag[idx] = sig * sig * out.table->phi_at(a_sq, 0);
      }
  return out;
}

std::vector<double> assemble_dense(const Filtered2D& kernel, std::size_t max_entries) {
  const std::size_t count = kernel.factors.mode_count();
  detail::require(count * count <= max_entries,
                  "assemble_dense: dense 2D kernel would exceed the size guard");
  std::vector<double> dense(count * count);
  const int M = kernel.factors.angular_nodes;
  const double w = kernel.factors.term_weight;
  for (std::size_t l = 0; l < count; ++l)
    for (std::size_t m = l; m < count; ++m) {
      double sum = 0.0;
      for (int t = 0; t < M; ++t) {
        const std::size_t off = static_cast<std::size_t>(t) * count;
        sum += kernel.factors.beta[off + l] * kernel.factors.gamma[off + m] +
               kernel.factors.gamma[off + l] * kernel.factors.beta[off + m];
      }
      dense[l * count + m] = w * sum;
      dense[m * count + l] = w * sum;
    }
  return dense;
}

std::vector<double> assemble_dense(const Filtered3D& kernel, const Grid& grid,
                                   std::size_t max_entries) {
  detail::require(grid.dim() == 3 && grid.modes() == kernel.modes,
                  "assemble_dense: grid does not match the kernel");
  const std::size_t count = grid.size();
  detail::require(count * count <= max_entries,
                  "assemble_dense: dense 3D kernel would exceed the size guard");
  std::vector<double> dense(count * count);
  for (std::size_t l = 0; l < count; ++l) {
    const auto lm = grid.mode_at(l);
    for (std::size_t m = 0; m < count; ++m)
      dense[l * count + m] =
          kernel.sigma[l] * kernel.sigma[m] * kernel.table->entry(lm, grid.mode_at(m));
  }
  return dense;
}

}  // namespace efm
