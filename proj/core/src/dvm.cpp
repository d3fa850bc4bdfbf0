// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/dvm.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace efm {

namespace {

void check_guard(const Grid& grid) {
  const bool ok = grid.dim() == 2 ? grid.modes() <= 9 : grid.modes() <= 5;
  detail::require(ok,
                  "dvm: resolution exceeds the memory guard (N <= 9 in 2D, N <= 5 in "
                  "3D); this module is for small-grid verification only");
}

/// E[j][a] = exp(-2 pi i j.a / N) over linear mode/difference indices. The
/// exponent j.a is reduced mod N in exact integer arithmetic first, so every
/// phase comes from one of N precomputed unit roots.
std::vector<Cplx> phase_matrix(const Grid& grid) {
  const int N = grid.modes();
  const std::size_t count = grid.size();
  std::vector<Cplx> roots(static_cast<std::size_t>(N));
  for (int m = 0; m < N; ++m) {
    const long double angle =
        -2.0L * std::numbers::pi_v<long double> * m / N;
    roots[m] = Cplx(static_cast<double>(std::cos(angle)),
                    static_cast<double>(std::sin(angle)));
  }

  std::vector<Cplx> out(count * count);
  for (std::size_t j = 0; j < count; ++j) {
    const auto jm = grid.mode_at(j);
    for (std::size_t a = 0; a < count; ++a) {
      const auto am = grid.mode_at(a);
      long dot = 0;
      for (int i = 0; i < grid.dim(); ++i) dot += static_cast<long>(jm[i]) * am[i];
      out[j * count + a] = roots[((dot % N) + N) % N];
    }
  }
  return out;
}

}  // namespace

GTable build_g(const Grid& grid, std::span<const double> dense_kernel, bool filtered) {
  check_guard(grid);
  const std::size_t count = grid.size();
  detail::require(dense_kernel.size() == count * count,
                  "build_g: dense kernel size mismatch");

  const std::vector<Cplx> phases = phase_matrix(grid);

  // Extended-precision accumulation keeps the roundoff of these large double
  // Fourier sums well under the -1e-12 non-negativity tolerance.
  using LCplx = std::complex<long double>;

  // half transform: H[i][z] = sum_j B(i,j) E_{-j}(z)
  std::vector<LCplx> half(count * count, LCplx{0.0L, 0.0L});
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      const long double b = dense_kernel[i * count + j];
      if (b == 0.0L) continue;
      const Cplx* row = &phases[j * count];
      LCplx* out = &half[i * count];
      for (std::size_t z = 0; z < count; ++z)
        out[z] += b * LCplx(row[z].real(), row[z].imag());
    }

  GTable table;
  table.dim = grid.dim();
  table.modes = grid.modes();
  table.filtered = filtered;
  table.values.assign(count * count, 0.0);

  long double max_imag = 0.0L;
  for (std::size_t y = 0; y < count; ++y) {
    for (std::size_t z = 0; z < count; ++z) {
      LCplx sum{0.0L, 0.0L};
      for (std::size_t i = 0; i < count; ++i)
        sum += LCplx(phases[i * count + y].real(), phases[i * count + y].imag()) *
               half[i * count + z];
      table.values[y * count + z] = static_cast<double>(sum.real());
      max_imag = std::max(max_imag, std::abs(sum.imag()));
    }
  }
  // kernel symmetry forces realness; anything else is upstream corruption
  double max_abs = 0.0;
  for (double v : table.values) max_abs = std::max(max_abs, std::abs(v));
  if (max_imag > 1e-12 * std::max(max_abs, 1.0))
    throw NumericalError("build_g: G has a non-real component beyond tolerance");
  return table;
}

DvmCoefficients build_a(const GTable& g_table, const Grid& grid) {
  check_guard(grid);
  detail::require(g_table.modes == grid.modes() && g_table.dim == grid.dim(),
                  "build_a: table/grid mismatch");
  const int N = grid.modes();
  const int n = grid.half_width();
  const std::size_t count = grid.size();

  double norm = 1.0;
  for (int i = 0; i < 2 * grid.dim(); ++i) norm /= static_cast<double>(N);

  DvmCoefficients out;
  out.dim = grid.dim();
  out.modes = grid.modes();
  out.entries.reserve(count * count * count);

  // s = (p + q - r) mod N is the only s with a nonzero indicator.
  std::vector<int> diff(static_cast<std::size_t>(N) * N);  // position of sym_mod(a-b)
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      diff[static_cast<std::size_t>(a) * N + b] = symmetric_mod((a - n) - (b - n), N) + n;

  const int d = grid.dim();
  for (std::size_t p = 0; p < count; ++p) {
    const auto pm = grid.mode_at(p);
    for (std::size_t q = 0; q < count; ++q) {
      const auto qm = grid.mode_at(q);
      for (std::size_t r = 0; r < count; ++r) {
        const auto rm = grid.mode_at(r);
        std::array<int, 3> sm{0, 0, 0};
        for (int i = 0; i < d; ++i) sm[i] = symmetric_mod(pm[i] + qm[i] - rm[i], N);
        const std::size_t s = grid.linear_index(sm);
        // y = p - s, z = q - s on the wrapped difference lattice
        std::size_t y = 0;
        std::size_t z = 0;
        for (int i = 0; i < d; ++i) {
          y = y * N + static_cast<std::size_t>(
                          diff[static_cast<std::size_t>(pm[i] + n) * N + (sm[i] + n)]);
          z = z * N + static_cast<std::size_t>(
                          diff[static_cast<std::size_t>(qm[i] + n) * N + (sm[i] + n)]);
        }
        out.entries.push_back({static_cast<std::uint32_t>(p),
                               static_cast<std::uint32_t>(q),
                               static_cast<std::uint32_t>(r),
                               static_cast<std::uint32_t>(s),
                               norm * g_table.at(y, z, count)});
      }
    }
  }
  return out;
}

std::vector<double> q_dvm(std::span<const double> values,
                          const DvmCoefficients& coefficients) {
  std::size_t count = 1;
  for (int i = 0; i < coefficients.dim; ++i)
    count *= static_cast<std::size_t>(coefficients.modes);
  detail::require(values.size() == count, "q_dvm: value count mismatch");

  std::vector<double> increments(count, 0.0);
  for (const auto& e : coefficients.entries)
    increments[e.r] += e.value * (values[e.p] * values[e.q] - values[e.r] * values[e.s]);
  return increments;
}

std::vector<double> g_slice(const Grid& grid, std::span<const double> dense_kernel,
                            const std::array<double, 3>& z0,
                            std::span<const std::array<double, 3>> y_points) {
  const std::size_t count = grid.size();
  detail::require(dense_kernel.size() == count * count,
                  "g_slice: dense kernel size mismatch");
  const double T = grid.box();

  // inner contraction u_i = sum_j B(i,j) E_{-j}(z0)
  std::vector<Cplx> inner(count, Cplx{0.0, 0.0});
  std::vector<Cplx> ez(count);
  for (std::size_t j = 0; j < count; ++j) {
    const auto jm = grid.mode_at(j);
    double phase = 0.0;
    for (int i = 0; i < grid.dim(); ++i) phase -= std::numbers::pi * jm[i] * z0[i] / T;
    ez[j] = std::polar(1.0, phase);
  }
  for (std::size_t i = 0; i < count; ++i) {
    Cplx sum{0.0, 0.0};
    const double* row = &dense_kernel[i * count];
    for (std::size_t j = 0; j < count; ++j) sum += row[j] * ez[j];
    inner[i] = sum;
  }

  std::vector<double> out(y_points.size());
  for (std::size_t p = 0; p < y_points.size(); ++p) {
    Cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < count; ++i) {
      const auto im = grid.mode_at(i);
      double phase = 0.0;
      for (int c = 0; c < grid.dim(); ++c)
        phase -= std::numbers::pi * im[c] * y_points[p][c] / T;
      sum += std::polar(1.0, phase) * inner[i];
    }
    out[p] = sum.real();
  }
  return out;
}

}  // namespace efm
