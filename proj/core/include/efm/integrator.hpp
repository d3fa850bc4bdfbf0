// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <cmath>
#include <concepts>
#include <functional>
#include <vector>

#include "efm/grid.hpp"

namespace efm {

struct TimeSpec {
  double dt = 0.01;
  double t_end = 1.0;
  int output_every = 1;  // observer cadence in steps

  void validate() const {
    detail::require(dt > 0.0, "TimeSpec: dt must be positive");
    detail::require(t_end >= 0.0, "TimeSpec: t_end must be non-negative");
    detail::require(output_every >= 1, "TimeSpec: output cadence must be >= 1");
  }
};

namespace rk_detail {

inline double rk_axpby(double a, double x, double b, double y) { return a * x + b * y; }
inline bool rk_finite(double x) { return std::isfinite(x); }

inline std::vector<Cplx> rk_axpby(double a, const std::vector<Cplx>& x, double b,
                                  const std::vector<Cplx>& y) {
  std::vector<Cplx> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}
inline bool rk_finite(const std::vector<Cplx>& x) {
  for (const Cplx& v : x)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace rk_detail

/// One step of the third-order strong-stability-preserving Runge-Kutta scheme
/// in Shu-Osher form:
///   u1 = u + dt L(u)
///   u2 = 3/4 u + 1/4 (u1 + dt L(u1))
///   u+ = 1/3 u + 2/3 (u2 + dt L(u2))
/// Each stage is a convex combination of forward-Euler substeps. Throws
/// NumericalError if any stage produces non-finite values.
template <class State, class Rhs>
  requires requires(Rhs&& rhs, const State& u) {
    { rhs(u) } -> std::convertible_to<State>;
  }
State ssprk3_step(const State& u, Rhs&& rhs, double dt) {
  using rk_detail::rk_axpby;
  using rk_detail::rk_finite;

  const State u1 = rk_axpby(1.0, u, dt, rhs(u));
  if (!rk_finite(u1)) throw NumericalError("ssprk3_step: non-finite value in stage 1");
  const State u2 =
      rk_axpby(3.0 / 4.0, u, 1.0 / 4.0, rk_axpby(1.0, u1, dt, rhs(u1)));
  if (!rk_finite(u2)) throw NumericalError("ssprk3_step: non-finite value in stage 2");
  const State out =
      rk_axpby(1.0 / 3.0, u, 2.0 / 3.0, rk_axpby(1.0, u2, dt, rhs(u2)));
  if (!rk_finite(out)) throw NumericalError("ssprk3_step: non-finite value in stage 3");
  return out;
}

using SpectralRhs = std::function<std::vector<Cplx>(const SpectralState&)>;
using StepObserver = std::function<void(const SpectralState&, int step)>;

/// SSP-RK3 step for a spectral state; advances the clock and re-projects the
/// coefficients onto the Hermitian subspace so the collocation values stay
/// real over long runs. No positivity clipping of any kind is applied.
SpectralState ssprk3_step(const SpectralState& state, const SpectralRhs& rhs,
                          double dt);

/// Repeated ssprk3_step with observer callbacks at step 0, every
/// `output_every` steps, and the final step. On a non-finite failure the
/// offending state is summarized in the NumericalError message. Returns the
/// final state.
SpectralState integrate(SpectralState state, const SpectralRhs& rhs,
                        const TimeSpec& time, const StepObserver& observer);

}  // namespace efm
