// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <doctest.h>

#include <cmath>

#include "efm/collision.hpp"
#include "efm/fft.hpp"
#include "efm/integrator.hpp"
#include "efm/problems.hpp"
#include "test_helpers.hpp"

using namespace efm;

TEST_CASE("a zero right-hand side leaves the state alone") {
  CHECK(ssprk3_step(2.5, [](double) { return 0.0; }, 0.1) == 2.5);

  const Grid grid(2, 5, 6.0);
  Rng rng(3);
  const SpectralState state = forward_dft(grid, test::random_values(rng, grid.size()));
  const SpectralState next = ssprk3_step(
      state,
      [&](const SpectralState& s) {
        return std::vector<Cplx>(s.modes.size(), Cplx{0.0, 0.0});
      },
      0.1);
  CHECK(test::max_abs_diff(next.modes, state.modes) < 1e-15);
  CHECK(next.time == doctest::Approx(state.time + 0.1));
}

TEST_CASE("scalar decay: one step reproduces exp(-dt) to fourth order") {
  const double dt = 0.01;
  const double u1 = ssprk3_step(1.0, [](double u) { return -u; }, dt);
  CHECK(std::abs(u1 - std::exp(-dt)) <= 1e-9);
}

TEST_CASE("scalar convergence study shows third order globally") {
  const auto solve = [](double dt) {
    double u = 1.0;
    const int steps = static_cast<int>(std::lround(1.0 / dt));
    for (int i = 0; i < steps; ++i)
      u = ssprk3_step(u, [](double x) { return -x; }, dt);
    return std::abs(u - std::exp(-1.0));
  };
  const double e1 = solve(0.1);
  const double e2 = solve(0.05);
  const double e3 = solve(0.025);
  const double slope1 = std::log2(e1 / e2);
  const double slope2 = std::log2(e2 / e3);
  CHECK(slope1 > 2.8);
  CHECK(slope1 < 3.2);
  CHECK(slope2 > 2.8);
  CHECK(slope2 < 3.2);
}

TEST_CASE("the step is exactly the documented convex combination") {
  // mirror the Shu-Osher composition for a small linear map and compare
  const auto rhs = [](double u) { return -2.0 * u + 0.3; };
  const double dt = 0.07;
  const double u = 1.3;
  const double u1 = u + dt * rhs(u);
  const double u2 = 0.75 * u + 0.25 * (u1 + dt * rhs(u1));
  const double expected = (1.0 / 3.0) * u + (2.0 / 3.0) * (u2 + dt * rhs(u2));
  CHECK(ssprk3_step(u, rhs, dt) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("non-finite stages abort with a diagnostic error") {
  CHECK_THROWS_AS(
      ssprk3_step(1.0, [](double) { return std::numeric_limits<double>::quiet_NaN(); },
                  0.1),
      NumericalError);
}

TEST_CASE("the mass mode is frozen by a conservative right-hand side") {
  const Grid grid(2, 9, 6.0);
  const CollisionOperator op(
      grid, Method::efm,
      FilteredKernel(apply_filter(
          build_kernel_2d(KernelSpec::for_grid(grid, 8)),
          FilterWeights::make(FilterKind::jackson, grid.half_width()))));
  SpectralState state = initialize(Problem::bkw_2d, grid, InitMode::interpolation);
  const Cplx mass0 = state.modes[grid.linear_index({0, 0, 0})];
  const SpectralRhs rhs = [&op](const SpectralState& s) { return op.apply(s.modes); };
  for (int i = 0; i < 10; ++i) state = ssprk3_step(state, rhs, 0.01);
  const Cplx mass1 = state.modes[grid.linear_index({0, 0, 0})];
  CHECK(std::abs(mass1 - mass0) <= 1e-13 * std::abs(mass0));
}

TEST_CASE("integrate: cadence, ordering, and edge cases") {
  const Grid grid(2, 5, 6.0);
  SpectralState state = initialize(Problem::bkw_2d, grid, InitMode::interpolation);
  const SpectralRhs zero_rhs = [](const SpectralState& s) {
    return std::vector<Cplx>(s.modes.size(), Cplx{0.0, 0.0});
  };

  SUBCASE("t_end = 0 observes the initial state only") {
    int calls = 0;
    integrate(state, zero_rhs, TimeSpec{0.01, 0.0, 1},
              [&](const SpectralState&, int) { ++calls; });
    CHECK(calls == 1);
  }
  SUBCASE("records arrive strictly ordered in time") {
    std::vector<double> times;
    integrate(state, zero_rhs, TimeSpec{0.01, 0.05, 1},
              [&](const SpectralState& s, int) { times.push_back(s.time); });
    REQUIRE(times.size() == 6);
    for (std::size_t i = 0; i + 1 < times.size(); ++i) CHECK(times[i] < times[i + 1]);
  }
  SUBCASE("cadence skips intermediate steps but keeps the final one") {
    std::vector<int> steps;
    integrate(state, zero_rhs, TimeSpec{0.01, 0.05, 2},
              [&](const SpectralState&, int step) { steps.push_back(step); });
    CHECK(steps == std::vector<int>{0, 2, 4, 5});
  }
  SUBCASE("t_end must be a whole number of steps") {
    CHECK_THROWS_AS(integrate(state, zero_rhs, TimeSpec{0.01, 0.0153, 1}, nullptr),
                    InvalidArgument);
  }
  SUBCASE("a blow-up reports the time and step") {
    const SpectralRhs bad = [](const SpectralState& s) {
      std::vector<Cplx> out(s.modes.size(), Cplx{0.0, 0.0});
      out[0] = Cplx{std::numeric_limits<double>::infinity(), 0.0};
      return out;
    };
    try {
      integrate(state, bad, TimeSpec{0.01, 0.05, 1}, nullptr);
      FAIL("expected NumericalError");
    } catch (const NumericalError& err) {
      const std::string what = err.what();
      CHECK(what.find("stage") != std::string::npos);
      CHECK(what.find("step") != std::string::npos);
    }
  }
}
