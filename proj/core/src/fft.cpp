// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace efm {
namespace fft {

namespace {

// FFTW planning is not thread-safe; executing a plan on fresh arrays is.
// Plans are created once per (dim, modes, sign) with FFTW_ESTIMATE (keeps
// planning cheap and deterministic) and FFTW_UNALIGNED so they can run on
// any caller buffer via fftw_execute_dft.
class PlanCache {
 public:
  fftw_plan get(int dim, int modes, int sign) {
    const auto key = std::make_tuple(dim, modes, sign);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(modes);
    std::vector<Cplx> scratch(total);
    int dims[3] = {modes, modes, modes};
    fftw_plan plan = fftw_plan_dft(
        dim, dims, reinterpret_cast<fftw_complex*>(scratch.data()),
        reinterpret_cast<fftw_complex*>(scratch.data()),
        sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw NumericalError("fft: FFTW plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// Generic d-dim cyclic shift copy: out[(t + shift) mod N per axis] = in[t].
void cyclic_shift_copy(int dim, int modes, int shift, const Cplx* in, Cplx* out) {
  const int N = modes;
  const auto wrap = [N, shift](int t) { return (t + shift) % N; };
  if (dim == 2) {
    for (int t0 = 0; t0 < N; ++t0) {
      const std::size_t dst0 = static_cast<std::size_t>(wrap(t0)) * N;
      const std::size_t src0 = static_cast<std::size_t>(t0) * N;
      for (int t1 = 0; t1 < N; ++t1) out[dst0 + wrap(t1)] = in[src0 + t1];
    }
  } else {
    for (int t0 = 0; t0 < N; ++t0)
      for (int t1 = 0; t1 < N; ++t1) {
        const std::size_t dst0 = (static_cast<std::size_t>(wrap(t0)) * N + wrap(t1)) * N;
        const std::size_t src0 = (static_cast<std::size_t>(t0) * N + t1) * N;
        for (int t2 = 0; t2 < N; ++t2) out[dst0 + wrap(t2)] = in[src0 + t2];
      }
  }
}

}  // namespace

void dft_inplace(int dim, int modes, int sign, Cplx* data) {
  fftw_plan plan = plan_cache().get(dim, modes, sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

std::vector<Cplx> to_transform_order(int dim, int modes, std::span<const Cplx> lex) {
  std::vector<Cplx> out(lex.size());
  // u = k mod N = (t - n) mod N = (t + n + 1) mod N for N = 2n+1.
  cyclic_shift_copy(dim, modes, (modes + 1) / 2, lex.data(), out.data());
  return out;
}

std::vector<Cplx> from_transform_order(int dim, int modes, std::span<const Cplx> tr) {
  std::vector<Cplx> out(tr.size());
  cyclic_shift_copy(dim, modes, modes / 2, tr.data(), out.data());
  return out;
}

std::vector<Cplx> embed_padded(int dim, int modes, int padded,
                               std::span<const Cplx> lex) {
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(padded);
  std::vector<Cplx> out(total, Cplx{0.0, 0.0});
  const int N = modes;
  if (dim == 2) {
    for (int t0 = 0; t0 < N; ++t0)
      for (int t1 = 0; t1 < N; ++t1)
        out[static_cast<std::size_t>(t0) * padded + t1] =
            lex[static_cast<std::size_t>(t0) * N + t1];
  } else {
    for (int t0 = 0; t0 < N; ++t0)
      for (int t1 = 0; t1 < N; ++t1)
        for (int t2 = 0; t2 < N; ++t2)
          out[(static_cast<std::size_t>(t0) * padded + t1) * padded + t2] =
              lex[(static_cast<std::size_t>(t0) * N + t1) * N + t2];
  }
  return out;
}

void extract_padded(int dim, int modes, int padded, std::span<const Cplx> padded_data,
                    Cplx* lex_out) {
  const int N = modes;
  const int n = (N - 1) / 2;
  const int off = 2 * n;  // mode k sits at position k + 2n
  if (dim == 2) {
    for (int k0 = -n; k0 <= n; ++k0)
      for (int k1 = -n; k1 <= n; ++k1)
        lex_out[static_cast<std::size_t>(k0 + n) * N + (k1 + n)] =
            padded_data[static_cast<std::size_t>(k0 + off) * padded + (k1 + off)];
  } else {
    for (int k0 = -n; k0 <= n; ++k0)
      for (int k1 = -n; k1 <= n; ++k1)
        for (int k2 = -n; k2 <= n; ++k2)
          lex_out[(static_cast<std::size_t>(k0 + n) * N + (k1 + n)) * N + (k2 + n)] =
              padded_data[(static_cast<std::size_t>(k0 + off) * padded + (k1 + off)) *
                              padded +
                          (k2 + off)];
  }
}

int next_fast_size(int m) {
  for (int s = m;; ++s) {
    int r = s;
    for (int f : {2, 3, 5, 7})
      while (r % f == 0) r /= f;
    if (r == 1) return s;
  }
}

std::vector<Cplx> circular_convolve(int dim, int modes, std::span<const Cplx> a,
                                    std::span<const Cplx> b) {
  std::vector<Cplx> fa = to_transform_order(dim, modes, a);
  std::vector<Cplx> fb = to_transform_order(dim, modes, b);
  dft_inplace(dim, modes, -1, fa.data());
  dft_inplace(dim, modes, -1, fb.data());
  const double scale = 1.0 / static_cast<double>(fa.size());
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i] * scale;
  dft_inplace(dim, modes, +1, fa.data());
  return from_transform_order(dim, modes, fa);
}

std::vector<Cplx> padded_convolve(int dim, int modes, std::span<const Cplx> a,
                                  std::span<const Cplx> b) {
  const int padded = next_fast_size(2 * modes - 1);
  std::vector<Cplx> fa = embed_padded(dim, modes, padded, a);
  std::vector<Cplx> fb = embed_padded(dim, modes, padded, b);
  dft_inplace(dim, padded, -1, fa.data());
  dft_inplace(dim, padded, -1, fb.data());
  const double scale = 1.0 / static_cast<double>(fa.size());
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i] * scale;
  dft_inplace(dim, padded, +1, fa.data());
  std::vector<Cplx> out(a.size());
  extract_padded(dim, modes, padded, fa, out.data());
  return out;
}

}  // namespace fft

std::vector<Cplx> forward_dft_complex(const Grid& grid, std::span<const Cplx> values) {
  detail::require(values.size() == grid.size(), "forward_dft: size mismatch with grid");
  std::vector<Cplx> work =
      fft::to_transform_order(grid.dim(), grid.modes(), values);
  fft::dft_inplace(grid.dim(), grid.modes(), -1, work.data());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : work) v *= scale;
  return fft::from_transform_order(grid.dim(), grid.modes(), work);
}

std::vector<Cplx> inverse_dft_complex(const Grid& grid, std::span<const Cplx> modes) {
  detail::require(modes.size() == grid.size(), "inverse_dft: size mismatch with grid");
  std::vector<Cplx> work = fft::to_transform_order(grid.dim(), grid.modes(), modes);
  fft::dft_inplace(grid.dim(), grid.modes(), +1, work.data());
  return fft::from_transform_order(grid.dim(), grid.modes(), work);
}

SpectralState forward_dft(const Grid& grid, std::span<const double> values) {
  detail::require(values.size() == grid.size(), "forward_dft: size mismatch with grid");
  std::vector<Cplx> complex_values(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) complex_values[i] = values[i];
  SpectralState state(grid, forward_dft_complex(grid, complex_values));
  if (state.hermitian_defect() > 1e-12)
    throw NumericalError("forward_dft: Hermitian defect above 1e-12 on real input");
  state.symmetrize();
  return state;
}

std::vector<double> inverse_dft(const SpectralState& state, double tolerance) {
  const std::vector<Cplx> values = inverse_dft_complex(state.grid, state.modes);
  double max_re = 0.0;
  double max_im = 0.0;
  for (const Cplx& v : values) {
    max_re = std::max(max_re, std::abs(v.real()));
    max_im = std::max(max_im, std::abs(v.imag()));
  }
  if (max_im > tolerance * std::max(max_re, 1e-300))
    throw NumericalError(
        "inverse_dft: imaginary residue exceeds tolerance (Hermitian symmetry "
        "violated upstream)");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
  return out;
}

}  // namespace efm
