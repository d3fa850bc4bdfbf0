// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <span>
#include <vector>

#include "efm/grid.hpp"

namespace efm {

/// Discrete transforms between point values on X and modes on K,
///   F_hat_k = N^{-d} sum_p F_p E_{-k}(p),   F_p = sum_k F_hat_k E_k(p),
/// with E_k(v) = exp(i pi k.v / T). On the uniform grid these reduce to
/// standard DFTs up to a cyclic reindexing between the symmetric mode layout
/// and the 0-based transform layout; FFTW does the heavy lifting.
namespace fft {

/// d-dimensional in-place complex DFT of size modes^dim. sign = -1 is the
/// forward (E_{-k}) direction, +1 the inverse; both are unnormalized.
void dft_inplace(int dim, int modes, int sign, Cplx* data);

/// Copy from lexicographic symmetric layout (index t_i = k_i + n) to the
/// 0-based transform layout (index u_i = k_i mod N) and back.
std::vector<Cplx> to_transform_order(int dim, int modes, std::span<const Cplx> lex);
std::vector<Cplx> from_transform_order(int dim, int modes, std::span<const Cplx> tr);

/// Embed a lexicographic mode array into a zero padded cube of size
/// padded^dim at offsets t_i = k_i + n (for linear, non-circular convolution).
std::vector<Cplx> embed_padded(int dim, int modes, int padded,
                               std::span<const Cplx> lex);
/// Extract modes k in [-n,n]^d from a padded linear-convolution result,
/// where mode k sits at position k + 2n per axis.
void extract_padded(int dim, int modes, int padded, std::span<const Cplx> padded_data,
                    Cplx* lex_out);

/// Smallest size >= m whose prime factors are all in {2,3,5,7}.
int next_fast_size(int m);

/// Circular convolution over the aliased mode lattice:
/// C_k = sum_{l+m = k (mod N)} A_l B_m, arrays lexicographic over K.
std::vector<Cplx> circular_convolve(int dim, int modes, std::span<const Cplx> a,
                                    std::span<const Cplx> b);

/// Strict (Galerkin) convolution restricted back to K:
/// C_k = sum_{l+m = k, l,m in K} A_l B_m via zero padding to a fast size
/// >= 2N-1.
std::vector<Cplx> padded_convolve(int dim, int modes, std::span<const Cplx> a,
                                  std::span<const Cplx> b);

}  // namespace fft

/// Point values -> SpectralState. Checks and enforces Hermitian symmetry
/// (defect must stay within 1e-12 relative). Throws on size mismatch.
SpectralState forward_dft(const Grid& grid, std::span<const double> values);

/// SpectralState -> point values. The imaginary residue of the inverse
/// transform must be within `tolerance` relative to the largest point value;
/// a larger residue signals upstream corruption and throws NumericalError.
std::vector<double> inverse_dft(const SpectralState& state, double tolerance = 1e-12);

/// Complex forward counterpart used internally and by tests; no Hermitian
/// handling.
std::vector<Cplx> forward_dft_complex(const Grid& grid, std::span<const Cplx> values);
std::vector<Cplx> inverse_dft_complex(const Grid& grid, std::span<const Cplx> modes);

}  // namespace efm
