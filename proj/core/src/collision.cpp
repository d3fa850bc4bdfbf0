// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/collision.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace efm {

FilterKind method_filter(Method method) {
  switch (method) {
    case Method::efm:
      return FilterKind::jackson;
    case Method::efm_fejer:
      return FilterKind::fejer;
    default:
      return FilterKind::none;
  }
}

bool method_aliased(Method method) { return method != Method::fgm; }

std::string method_name(Method method) {
  switch (method) {
    case Method::fgm:
      return "fgm";
    case Method::fcm:
      return "fcm";
    case Method::efm:
      return "efm";
    case Method::efm_fejer:
      return "efm-fejer";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "fgm") return Method::fgm;
  if (name == "fcm") return Method::fcm;
  if (name == "efm") return Method::efm;
  if (name == "efm-fejer" || name == "efm_fejer") return Method::efm_fejer;
  throw InvalidArgument("unknown method '" + name +
                        "' (expected fgm, fcm, efm, or efm-fejer)");
}

namespace detail_collision {

std::vector<int> aliased_sum_table(int modes) {
  const int N = modes;
  const int n = (N - 1) / 2;
  std::vector<int> table(static_cast<std::size_t>(N) * N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      table[static_cast<std::size_t>(a) * N + b] =
          symmetric_mod((a - n) + (b - n), N) + n;
  return table;
}

std::vector<int> strict_sum_table(int modes) {
  const int N = modes;
  const int n = (N - 1) / 2;
  std::vector<int> table(static_cast<std::size_t>(N) * N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      const int sum = (a - n) + (b - n);
      table[static_cast<std::size_t>(a) * N + b] = std::abs(sum) <= n ? sum + n : -1;
    }
  return table;
}

}  // namespace detail_collision

namespace {

// Pointwise product of a mode array with real weights, in lexicographic order.
std::vector<Cplx> scaled(std::span<const Cplx> modes, std::span<const double> w) {
  std::vector<Cplx> out(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) out[i] = w[i] * modes[i];
  return out;
}

}  // namespace

GainLoss gain_loss_fast_2d(const Grid& grid, std::span<const Cplx> modes,
                           const Filtered2D& kernel, bool aliased) {
  detail::require(grid.dim() == 2, "gain_loss_fast_2d: grid must be 2D");
  detail::require(modes.size() == grid.size(), "collision: state/grid size mismatch");
  detail::require(kernel.modes == grid.modes(),
                  "collision: kernel resolution does not match the grid");

  const int N = grid.modes();
  const int padded = aliased ? N : fft::next_fast_size(2 * N - 1);
  std::size_t work_size = static_cast<std::size_t>(padded) * padded;
  const std::size_t count = grid.size();
  const int M = kernel.factors.angular_nodes;
  const double two_w = 2.0 * kernel.factors.term_weight;

  const auto transform = [&](std::span<const Cplx> lex) {
    std::vector<Cplx> work = aliased ? fft::to_transform_order(2, N, lex)
                                     : fft::embed_padded(2, N, padded, lex);
    fft::dft_inplace(2, padded, -1, work.data());
    return work;
  };

  std::vector<Cplx> gain_acc(work_size, Cplx{0.0, 0.0});
  for (int t = 0; t < M; ++t) {
    const std::size_t off = static_cast<std::size_t>(t) * count;
    std::vector<Cplx> a(count);
    std::vector<Cplx> b(count);
    for (std::size_t i = 0; i < count; ++i) {
      a[i] = kernel.factors.beta[off + i] * modes[i];
      b[i] = kernel.factors.gamma[off + i] * modes[i];
    }
    const std::vector<Cplx> fa = transform(a);
    const std::vector<Cplx> fb = transform(b);
    for (std::size_t i = 0; i < work_size; ++i) gain_acc[i] += two_w * fa[i] * fb[i];
  }

  std::vector<Cplx> loss_acc = transform(modes);
  {
    const std::vector<Cplx> fd = transform(scaled(modes, kernel.diag));
    for (std::size_t i = 0; i < work_size; ++i) loss_acc[i] *= fd[i];
  }

  const double scale = 1.0 / static_cast<double>(work_size);
  for (auto& v : gain_acc) v *= scale;
  for (auto& v : loss_acc) v *= scale;
  fft::dft_inplace(2, padded, +1, gain_acc.data());
  fft::dft_inplace(2, padded, +1, loss_acc.data());

  GainLoss out;
  if (aliased) {
    out.gain = fft::from_transform_order(2, N, gain_acc);
    out.loss = fft::from_transform_order(2, N, loss_acc);
  } else {
    out.gain.resize(count);
    out.loss.resize(count);
    fft::extract_padded(2, N, padded, gain_acc, out.gain.data());
    fft::extract_padded(2, N, padded, loss_acc, out.loss.data());
  }
  return out;
}

std::vector<Cplx> eval_collision_fast(const Grid& grid, std::span<const Cplx> modes,
                                      const Filtered2D& kernel, Method method) {
  GainLoss gl = gain_loss_fast_2d(grid, modes, kernel, method_aliased(method));
  for (std::size_t i = 0; i < gl.gain.size(); ++i) gl.gain[i] -= gl.loss[i];
  return std::move(gl.gain);
}

namespace {

inline int floor_div2(int v) { return v >= 0 ? v / 2 : (v - 1) / 2; }

/// Gain part of the 3D double sum, grouped by s = l+m. For a fixed s all
/// kernel lookups live in the single table row phi[|s|^2][.], and the inner
/// l3 scan touches the scaled modes with unit stride.
std::vector<Cplx> gain_3d(const Grid& grid, std::span<const Cplx> modes,
                          const Filtered3D& kernel, bool aliased) {
  const int N = grid.modes();
  const int n = grid.half_width();
  const std::size_t count = grid.size();

  // sigma-scaled modes: the filtered gain equals the plain gain of sigma*F
  std::vector<Cplx> scaled_modes(count);
  for (std::size_t i = 0; i < count; ++i)
    scaled_modes[i] = kernel.sigma[i] * modes[i];

  // Hermitian inputs allow folding s and -s into one pass.
  bool hermitian = true;
  {
    double max_abs = 0.0;
    double max_dev = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      max_abs = std::max(max_abs, std::abs(modes[i]));
      max_dev = std::max(max_dev,
                         std::abs(modes[count - 1 - i] - std::conj(modes[i])));
    }
    hermitian = max_dev <= 1e-11 * std::max(max_abs, 1e-300);
  }

  const int W = kernel.table->max_sq + 1;
  const double* phi = kernel.table->phi.data();
  const Cplx* g = scaled_modes.data();

  const int s_lo_1 = hermitian ? 0 : -2 * n;
  const int threads = max_threads();
  std::vector<std::vector<Cplx>> partial(
      static_cast<std::size_t>(threads), std::vector<Cplx>(count, Cplx{0.0, 0.0}));

#pragma omp parallel for num_threads(threads) schedule(static, 1)
  for (int s1 = s_lo_1; s1 <= 2 * n; ++s1) {
#ifdef _OPENMP
    std::vector<Cplx>& acc = partial[omp_get_thread_num()];
#else
    std::vector<Cplx>& acc = partial[0];
#endif
    const int lo1 = std::max(-n, s1 - n);
    const int hi1 = std::min(n, s1 + n);
    const int s2_lo = (hermitian && s1 == 0) ? 0 : -2 * n;
    for (int s2 = s2_lo; s2 <= 2 * n; ++s2) {
      const int lo2 = std::max(-n, s2 - n);
      const int hi2 = std::min(n, s2 + n);
      const int s3_lo = (hermitian && s1 == 0 && s2 == 0) ? 0 : -2 * n;
      for (int s3 = s3_lo; s3 <= 2 * n; ++s3) {
        if (!aliased && (std::abs(s1) > n || std::abs(s2) > n || std::abs(s3) > n))
          continue;
        const int lo3 = std::max(-n, s3 - n);
        const int hi3 = std::min(n, s3 + n);
        const long a_sq = static_cast<long>(s1) * s1 + static_cast<long>(s2) * s2 +
                          static_cast<long>(s3) * s3;
        const double* phi_row = phi + a_sq * W;

        double re = 0.0;
        double im = 0.0;
        // One contiguous l3 scan; m = s - l walks backward.
        const auto row = [&](int l1, int l2, int from3, int to3, double factor) {
          if (from3 > to3) return;
          const int d1 = 2 * l1 - s1;
          const int d2 = 2 * l2 - s2;
          const long base = static_cast<long>(d1) * d1 + static_cast<long>(d2) * d2;
          const Cplx* pl = g + (static_cast<std::size_t>(l1 + n) * N + (l2 + n)) * N +
                           (from3 + n);
          const Cplx* pm = g +
                           (static_cast<std::size_t>(s1 - l1 + n) * N + (s2 - l2 + n)) *
                               N +
                           (s3 - from3 + n);
          int d3 = 2 * from3 - s3;
          double r = 0.0;
          double i2 = 0.0;
          for (int l3 = from3; l3 <= to3; ++l3) {
            const double w = phi_row[base + static_cast<long>(d3) * d3];
            const double ar = pl->real();
            const double ai = pl->imag();
            const double br = pm->real();
            const double bi = pm->imag();
            r += w * (ar * br - ai * bi);
            i2 += w * (ar * bi + ai * br);
            ++pl;
            --pm;
            d3 += 2;
          }
          re += factor * r;
          im += factor * i2;
        };

        // Pairs (l, s-l) are symmetric; iterate the half with 2l < s in the
        // first differing component and double, the fixed point l = s/2 once.
        const int last_below_1 = s1 % 2 == 0 ? s1 / 2 - 1 : floor_div2(s1);
        for (int l1 = lo1; l1 <= std::min(hi1, last_below_1); ++l1)
          for (int l2 = lo2; l2 <= hi2; ++l2) row(l1, l2, lo3, hi3, 2.0);
        if (s1 % 2 == 0) {
          const int l1 = s1 / 2;
          const int last_below_2 = s2 % 2 == 0 ? s2 / 2 - 1 : floor_div2(s2);
          for (int l2 = lo2; l2 <= std::min(hi2, last_below_2); ++l2)
            row(l1, l2, lo3, hi3, 2.0);
          if (s2 % 2 == 0) {
            const int l2 = s2 / 2;
            const int last_below_3 = s3 % 2 == 0 ? s3 / 2 - 1 : floor_div2(s3);
            row(l1, l2, lo3, std::min(hi3, last_below_3), 2.0);
            if (s3 % 2 == 0) row(l1, l2, s3 / 2, s3 / 2, 1.0);
          }
        }

        const std::size_t k =
            (static_cast<std::size_t>(symmetric_mod(s1, N) + n) * N +
             (symmetric_mod(s2, N) + n)) *
                N +
            (symmetric_mod(s3, N) + n);
        acc[k] += Cplx{re, im};
        if (hermitian && (s1 != 0 || s2 != 0 || s3 != 0))
          acc[count - 1 - k] += Cplx{re, -im};
      }
    }
  }

  std::vector<Cplx> gain(count, Cplx{0.0, 0.0});
  for (const auto& acc : partial)
    for (std::size_t i = 0; i < count; ++i) gain[i] += acc[i];
  return gain;
}

}  // namespace

GainLoss gain_loss_3d(const Grid& grid, std::span<const Cplx> modes,
                      const Filtered3D& kernel, bool aliased) {
  detail::require(grid.dim() == 3, "gain_loss_3d: grid must be 3D");
  detail::require(modes.size() == grid.size(), "collision: state/grid size mismatch");
  detail::require(kernel.modes == grid.modes(),
                  "collision: kernel resolution does not match the grid");

  GainLoss out;
  out.gain = gain_3d(grid, modes, kernel, aliased);
  const std::vector<Cplx> weighted = scaled(modes, kernel.diag);
  out.loss = aliased
                 ? fft::circular_convolve(3, grid.modes(), modes, weighted)
                 : fft::padded_convolve(3, grid.modes(), modes, weighted);
  return out;
}

std::vector<Cplx> eval_collision_3d(const Grid& grid, std::span<const Cplx> modes,
                                    const Filtered3D& kernel, Method method) {
  GainLoss gl = gain_loss_3d(grid, modes, kernel, method_aliased(method));
  for (std::size_t i = 0; i < gl.gain.size(); ++i) gl.gain[i] -= gl.loss[i];
  return std::move(gl.gain);
}

CollisionOperator::CollisionOperator(const Grid& grid, Method method,
                                     FilteredKernel kernel)
    : grid_(grid), method_(method), kernel_(std::move(kernel)) {
  detail::require(kernel_.dim() == grid.dim(),
                  "CollisionOperator: kernel/grid dimension mismatch");
  const FilterKind expected = method_filter(method);
  const FilterKind actual =
      kernel_.dim() == 2 ? kernel_.as_2d().filter : kernel_.as_3d().filter;
  detail::require(actual == expected,
                  "CollisionOperator: kernel filter does not match the method variant");
  const int kernel_modes =
      kernel_.dim() == 2 ? kernel_.as_2d().modes : kernel_.as_3d().modes;
  detail::require(kernel_modes == grid.modes(),
                  "CollisionOperator: kernel resolution does not match the grid");
}

std::vector<Cplx> CollisionOperator::apply(std::span<const Cplx> modes) const {
  if (grid_.dim() == 2)
    return eval_collision_fast(grid_, modes, kernel_.as_2d(), method_);
  return eval_collision_3d(grid_, modes, kernel_.as_3d(), method_);
}

GainLoss CollisionOperator::split(std::span<const Cplx> modes) const {
  if (grid_.dim() == 2)
    return gain_loss_fast_2d(grid_, modes, kernel_.as_2d(), method_aliased(method_));
  return gain_loss_3d(grid_, modes, kernel_.as_3d(), method_aliased(method_));
}

SpectralState CollisionOperator::rhs(const SpectralState& state) const {
  detail::require(state.grid == grid_, "CollisionOperator: state grid mismatch");
  return SpectralState(grid_, apply(state.modes), state.time);
}

}  // namespace efm
