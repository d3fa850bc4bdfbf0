// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace efm {

SpectralState ssprk3_step(const SpectralState& state, const SpectralRhs& rhs,
                          double dt) {
  const auto vector_rhs = [&](const std::vector<Cplx>& modes) {
    // stages carry the base time; the collision operator is autonomous
    return rhs(SpectralState(state.grid, modes, state.time));
  };
  SpectralState out(state.grid,
                    ssprk3_step(state.modes, vector_rhs, dt), state.time + dt);
  out.symmetrize();
  return out;
}

SpectralState integrate(SpectralState state, const SpectralRhs& rhs,
                        const TimeSpec& time, const StepObserver& observer) {
  time.validate();
  const int steps = static_cast<int>(std::llround(time.t_end / time.dt));
  detail::require(std::abs(steps * time.dt - time.t_end) < 1e-9 * std::max(1.0, time.t_end),
                  "integrate: t_end must be an integer number of steps");

  if (observer) observer(state, 0);
  for (int step = 1; step <= steps; ++step) {
    try {
      state = ssprk3_step(state, rhs, time.dt);
    } catch (const NumericalError& err) {
      std::ostringstream msg;
      msg << err.what() << " at t = " << state.time << " (step " << step << " of "
          << steps << ", N = " << state.grid.modes() << ")";
      throw NumericalError(msg.str());
    }
    if (observer && (step % time.output_every == 0 || step == steps))
      observer(state, step);
  }
  return state;
}

}  // namespace efm
