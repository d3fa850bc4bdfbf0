// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "efm/collision.hpp"
#include "efm/grid.hpp"

namespace efm {

enum class Problem { bkw_2d, bkw_3d, bigaussian_2d, discontinuous_2d };

int problem_dim(Problem problem);
/// True when a closed-form time-dependent solution exists (the BKW cases).
bool problem_has_exact(Problem problem);
bool problem_smooth(Problem problem);
std::string problem_name(Problem problem);
Problem problem_from_name(const std::string& name);

/// 2D BKW density with S = 1 - exp(-t/8)/2:
/// f = (2 pi S)^{-1} exp(-|v|^2/(2S)) ((2S-1)/S + (1-S)/(2S^2) |v|^2).
double bkw_2d(double t, const std::array<double, 3>& v);

/// 3D BKW density with S = 1 - 2 exp(-t/6)/5:
/// f = (2 pi S)^{-3/2} exp(-|v|^2/(2S)) ((5S-3)/(2S) + (1-S)/(2S^2) |v|^2).
double bkw_3d(double t, const std::array<double, 3>& v);

/// Two unit-mass-halves Gaussian bumps at u = (+-2, 0).
double bigaussian_2d(const std::array<double, 3>& v);

/// Half-plane Maxwellians with a jump across v1 = 0; parameters solve
/// mass = energy = 1, momentum = 0 with rho1 = 6/5. At v1 = 0 the mean of
/// the two one-sided limits is returned.
double discontinuous_2d(const std::array<double, 3>& v);

struct DiscontinuousParams {
  double rho_1, rho_2, temperature_1, temperature_2;
};
/// Closed forms: rho2 = 4/5, T1 = 2/3, T2 = 3/2.
DiscontinuousParams discontinuous_parameters();

/// Density at simulation time t; only the BKW problems evolve, the others are
/// defined at t = 0 (throws for t > 0 without an exact solution).
double exact_density(Problem problem, double t, const std::array<double, 3>& v);
double initial_density(Problem problem, const std::array<double, 3>& v);

enum class InitMode { interpolation, projection };
/// Interpolation for the entropic variants, projection for FGM/FCM.
InitMode default_init_mode(Method method);

/// Point samples of the initial density on X. For the discontinuous problem
/// the samples are mollified with an isotropic Gaussian of standard deviation
/// `mollifier_width` (default h), truncated at six standard deviations and
/// normalized to unit mass; sampled values are then non-negative by
/// construction.
std::vector<double> interpolation_samples(Problem problem, const Grid& grid,
                                          double mollifier_width = 0.0);

/// Build the spectral initial state. Interpolation samples (mollified where
/// needed) and transforms; projection computes the Fourier coefficients of
/// the initial density restricted to the box by 4x-oversampled quadrature and
/// truncates to K (point values may then be negative; expected for the
/// Galerkin/collocation comparisons).
SpectralState initialize(Problem problem, const Grid& grid, InitMode mode,
                         double mollifier_width = 0.0);

}  // namespace efm
