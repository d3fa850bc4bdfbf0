// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/filters.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace efm {

namespace {
void check_range(int half_width, int beta, const char* name) {
  detail::require(half_width >= 1, std::string(name) + ": half-width must be >= 1");
  detail::require(std::abs(beta) <= half_width,
                  std::string(name) + ": |beta| exceeds the half-width");
}
}  // namespace

double jackson_1d(int half_width, int beta) {
  check_range(half_width, beta, "jackson_1d");
  const double np1 = half_width + 1.0;
  const double x = std::numbers::pi * std::abs(beta) / np1;
  // cot(pi/(n+1)) is finite for n >= 1
  const double cot = std::cos(std::numbers::pi / np1) / std::sin(std::numbers::pi / np1);
  return ((np1 - std::abs(beta)) * std::cos(x) + std::sin(x) * cot) / np1;
}

double fejer_1d(int half_width, int beta) {
  check_range(half_width, beta, "fejer_1d");
  return 1.0 - std::abs(beta) / (half_width + 1.0);
}

FilterWeights FilterWeights::make(FilterKind kind, int half_width) {
  detail::require(half_width >= 1, "FilterWeights: half-width must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(half_width) + 1, 1.0);
  switch (kind) {
    case FilterKind::none:
      break;
    case FilterKind::jackson:
      for (int b = 0; b <= half_width; ++b) {
        w[b] = jackson_1d(half_width, b);
        // clamp the tiny negative roundoff at beta = n for small n
        if (w[b] < 0.0 && w[b] > -1e-15) w[b] = 0.0;
      }
      break;
    case FilterKind::fejer:
      for (int b = 0; b <= half_width; ++b) w[b] = fejer_1d(half_width, b);
      break;
  }
  return FilterWeights(kind, half_width, std::move(w));
}

double FilterWeights::weight_1d(int beta) const {
  check_range(half_width_, beta, "FilterWeights::weight_1d");
  return weights_[static_cast<std::size_t>(std::abs(beta))];
}

double FilterWeights::tensor_weight(const std::array<int, 3>& k, int dim) const {
  double w = 1.0;
  for (int i = 0; i < dim; ++i) w *= weight_1d(k[i]);
  return w;
}

std::vector<double> FilterWeights::mode_weights(const Grid& grid) const {
  detail::require(grid.half_width() == half_width_,
                  "FilterWeights::mode_weights: half-width does not match grid");
  const int N = grid.modes();
  const int n = grid.half_width();
  std::vector<double> per_axis(static_cast<std::size_t>(N));
  for (int k = -n; k <= n; ++k) per_axis[k + n] = weight_1d(k);

  std::vector<double> out(grid.size());
  if (grid.dim() == 2) {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        out[static_cast<std::size_t>(a) * N + b] = per_axis[a] * per_axis[b];
  } else {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c)
          out[(static_cast<std::size_t>(a) * N + b) * N + c] =
              per_axis[a] * per_axis[b] * per_axis[c];
  }
  return out;
}

KernelCertification certify_kernel_nonnegative(const FilterWeights& weights,
                                               int oversample, int dim,
                                               double box_half_width) {
  detail::require(oversample >= 4, "certify_kernel_nonnegative: oversample >= 4");
  detail::require(dim == 2 || dim == 3, "certify_kernel_nonnegative: dim must be 2 or 3");
  const int n = weights.half_width();
  const int N = 2 * n + 1;
  const int samples = oversample * N;
  const double T = box_half_width;

  // 1D kernel chi(x) = sigma(0) + 2 sum_{b>=1} sigma(b) cos(pi b x / T)
  double min1 = std::numeric_limits<double>::infinity();
  double max1 = -std::numeric_limits<double>::infinity();
  double argmin1 = 0.0;
  double argmax1 = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double x = -T + 2.0 * T * s / samples;
    double chi = weights.weight_1d(0);
    for (int b = 1; b <= n; ++b)
      chi += 2.0 * weights.weight_1d(b) * std::cos(std::numbers::pi * b * x / T);
    if (chi < min1) {
      min1 = chi;
      argmin1 = x;
    }
    if (chi > max1) {
      max1 = chi;
      argmax1 = x;
    }
  }

  // The d-dimensional kernel is the tensor product of identical 1D factors,
  // so its sampled extrema are products of the 1D extrema.
  KernelCertification cert;
  cert.min_value = std::numeric_limits<double>::infinity();
  for (int negatives = 0; negatives <= dim; ++negatives) {
    double value = 1.0;
    for (int i = 0; i < dim; ++i) value *= (i < negatives) ? min1 : max1;
    if (value < cert.min_value) {
      cert.min_value = value;
      for (int i = 0; i < dim; ++i) cert.argmin[i] = (i < negatives) ? argmin1 : argmax1;
    }
  }
  return cert;
}

}  // namespace efm
