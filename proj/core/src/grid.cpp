// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace efm {

double Grid::dealias_bound(KernelForm form, double support_radius) {
  const double factor = form == KernelForm::carleman
                            ? (3.0 * std::sqrt(2.0) + 1.0) / 4.0
                            : (3.0 + std::sqrt(2.0)) / 4.0;
  return factor * support_radius;
}

double Grid::default_box(KernelForm form, double support_radius) {
  return std::ceil(dealias_bound(form, support_radius) * 100.0) / 100.0;
}

Grid::Grid(int dim, int requested_modes, double support_radius,
           std::optional<double> box_half_width, KernelForm form,
           bool allow_undersized_box)
    : dim_(dim),
      requested_modes_(requested_modes),
      support_radius_(support_radius),
      form_(form) {
  detail::require(dim == 2 || dim == 3, "Grid: dimension must be 2 or 3");
  detail::require(requested_modes >= 3, "Grid: need at least 3 modes per dimension");
  detail::require(support_radius > 0.0, "Grid: support radius R must be positive");

  const int effective = requested_modes % 2 == 0 ? requested_modes - 1 : requested_modes;
  half_width_ = (effective - 1) / 2;

  box_half_width_ = box_half_width.value_or(default_box(form, support_radius));
  detail::require(box_half_width_ > 0.0, "Grid: box half-width T must be positive");

  const double bound = dealias_bound(form, support_radius);
  if (box_half_width_ < bound * (1.0 - 1e-12) && !allow_undersized_box) {
    throw InvalidArgument("Grid: box half-width T = " + std::to_string(box_half_width_) +
                          " is below the anti-aliasing bound " + std::to_string(bound) +
                          " for R = " + std::to_string(support_radius) +
                          "; pass allow_undersized_box to override");
  }
}

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (int i = 0; i < dim_; ++i) s *= static_cast<std::size_t>(modes());
  return s;
}

std::size_t Grid::linear_index(const std::array<int, 3>& k) const {
  const int n = half_width_;
  const int N = modes();
  std::size_t idx = 0;
  for (int i = 0; i < dim_; ++i) {
    detail::require(k[i] >= -n && k[i] <= n, "Grid::linear_index: component out of range");
    idx = idx * static_cast<std::size_t>(N) + static_cast<std::size_t>(k[i] + n);
  }
  return idx;
}

std::array<int, 3> Grid::mode_at(std::size_t index) const {
  const int n = half_width_;
  const int N = modes();
  std::array<int, 3> k{0, 0, 0};
  for (int i = dim_ - 1; i >= 0; --i) {
    k[i] = static_cast<int>(index % static_cast<std::size_t>(N)) - n;
    index /= static_cast<std::size_t>(N);
  }
  return k;
}

std::array<double, 3> Grid::node_at(std::size_t index) const {
  const auto k = mode_at(index);
  const double h = spacing();
  return {h * k[0], h * k[1], h * k[2]};
}

std::size_t Grid::reflected_index(std::size_t index) const {
  // k -> -k reverses every axis of the symmetric lexicographic layout, which
  // is a full reversal of the flat array
  return size() - 1 - index;
}

int symmetric_mod(int value, int modes) {
  detail::require(modes % 2 == 1, "symmetric_mod: N must be odd (reduce even N first)");
  const int n = (modes - 1) / 2;
  int r = value % modes;
  if (r > n) r -= modes;
  if (r < -n) r += modes;
  return r;
}

std::array<int, 3> symmetric_mod(const std::array<int, 3>& k, int modes) {
  return {symmetric_mod(k[0], modes), symmetric_mod(k[1], modes),
          symmetric_mod(k[2], modes)};
}

std::vector<Cplx> reduce_even_modes(const std::vector<Cplx>& modes, int even_modes,
                                    int dim) {
  detail::require(even_modes >= 4 && even_modes % 2 == 0,
                  "reduce_even_modes: N must be even and >= 4");
  detail::require(dim == 2 || dim == 3, "reduce_even_modes: dimension must be 2 or 3");
  const int N = even_modes;
  std::size_t expected = 1;
  for (int i = 0; i < dim; ++i) expected *= static_cast<std::size_t>(N);
  detail::require(modes.size() == expected, "reduce_even_modes: size mismatch");

  const int reduced = N - 1;
  const int n = (reduced - 1) / 2;  // = N/2 - 1
  std::size_t out_size = 1;
  for (int i = 0; i < dim; ++i) out_size *= static_cast<std::size_t>(reduced);
  std::vector<Cplx> out(out_size);

  // Input is lexicographic over [-N/2, N/2-1]; keeping k in [-n, n] skips
  // exactly the components equal to -N/2.
  std::array<int, 3> k{0, 0, 0};
  std::size_t oi = 0;
  const auto in_index = [&](const std::array<int, 3>& kk) {
    std::size_t idx = 0;
    for (int i = 0; i < dim; ++i)
      idx = idx * static_cast<std::size_t>(N) + static_cast<std::size_t>(kk[i] + N / 2);
    return idx;
  };
  if (dim == 2) {
    for (k[0] = -n; k[0] <= n; ++k[0])
      for (k[1] = -n; k[1] <= n; ++k[1]) out[oi++] = modes[in_index(k)];
  } else {
    for (k[0] = -n; k[0] <= n; ++k[0])
      for (k[1] = -n; k[1] <= n; ++k[1])
        for (k[2] = -n; k[2] <= n; ++k[2]) out[oi++] = modes[in_index(k)];
  }
  return out;
}

double SpectralState::hermitian_defect() const {
  double max_abs = 0.0;
  double max_dev = 0.0;
  const std::size_t total = modes.size();
  for (std::size_t i = 0; i < total; ++i) {
    max_abs = std::max(max_abs, std::abs(modes[i]));
    const std::size_t j = grid.reflected_index(i);
    max_dev = std::max(max_dev, std::abs(modes[j] - std::conj(modes[i])));
  }
  return max_abs > 0.0 ? max_dev / max_abs : 0.0;
}

void SpectralState::symmetrize() {
  const std::size_t total = modes.size();
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t j = grid.reflected_index(i);
    if (j < i) continue;
    const Cplx a = modes[i];
    const Cplx b = modes[j];
    const Cplx avg = 0.5 * (a + std::conj(b));
    modes[i] = avg;
    modes[j] = std::conj(avg);
  }
}

}  // namespace efm
