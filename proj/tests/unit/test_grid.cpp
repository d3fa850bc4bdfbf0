// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <doctest.h>

#include <numbers>

#include "efm/fft.hpp"
#include "efm/grid.hpp"
#include "test_helpers.hpp"

using namespace efm;

TEST_CASE("symmetric_mod maps into [-n, n] and keeps congruence") {
  CHECK(symmetric_mod(std::array<int, 3>{3, 0, 0}, 5) ==
        std::array<int, 3>{-2, 0, 0});
  CHECK(symmetric_mod(std::array<int, 3>{0, 0, 0}, 5) == std::array<int, 3>{0, 0, 0});
  CHECK(symmetric_mod(std::array<int, 3>{-4, 4, 0}, 7) ==
        std::array<int, 3>{3, -3, 0});

  // exhaustive congruence and range check mod 7
  for (int v = -25; v <= 25; ++v) {
    const int r = symmetric_mod(v, 7);
    CHECK(((v - r) % 7) == 0);
    CHECK(r >= -3);
    CHECK(r <= 3);
  }
  CHECK_THROWS_AS(symmetric_mod(1, 6), InvalidArgument);
}

TEST_CASE("symmetric_mod is idempotent and a homomorphism") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int N = 2 * static_cast<int>(rng.below(20) + 1) + 1;
    const int a = static_cast<int>(rng.below(2000)) - 1000;
    const int b = static_cast<int>(rng.below(2000)) - 1000;
    CHECK(symmetric_mod(symmetric_mod(a, N), N) == symmetric_mod(a, N));
    CHECK(symmetric_mod(a + b, N) ==
          symmetric_mod(symmetric_mod(a, N) + symmetric_mod(b, N), N));
  }
}

TEST_CASE("grid construction, defaults, and anti-aliasing guard") {
  const Grid g2(2, 32, 6.0);
  CHECK(g2.modes() == 31);  // even request reduces to odd
  CHECK(g2.requested_modes() == 32);
  CHECK(g2.box() == doctest::Approx(7.87).epsilon(1e-12));
  CHECK(g2.spacing() == doctest::Approx(2.0 * 7.87 / 31));

  const Grid g3(3, 9, 6.0, std::nullopt, KernelForm::classical);
  CHECK(g3.modes() == 9);
  CHECK(g3.box() == doctest::Approx(6.63).epsilon(1e-12));

  CHECK_THROWS_AS(Grid(4, 9, 6.0), InvalidArgument);
  CHECK_THROWS_AS(Grid(2, 2, 6.0), InvalidArgument);
  CHECK_THROWS_AS(Grid(2, 9, -1.0), InvalidArgument);
  // T below the bound rejected unless overridden
  CHECK_THROWS_AS(Grid(2, 9, 6.0, 5.0), InvalidArgument);
  CHECK_NOTHROW(Grid(2, 9, 6.0, 5.0, KernelForm::carleman, true));
}

TEST_CASE("index round trips and reflection") {
  const Grid grid(3, 5, 6.0, std::nullopt, KernelForm::classical);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid.linear_index(grid.mode_at(i)) == i);
    const auto k = grid.mode_at(i);
    const auto r = grid.mode_at(grid.reflected_index(i));
    for (int c = 0; c < 3; ++c) CHECK(r[c] == -k[c]);
  }
}

TEST_CASE("forward transform of simple states") {
  const Grid grid(2, 7, 6.0);
  SUBCASE("constant values put everything in the zero mode") {
    const std::vector<double> values(grid.size(), 3.25);
    const SpectralState state = forward_dft(grid, values);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double expected = i == grid.linear_index({0, 0, 0}) ? 3.25 : 0.0;
      CHECK(std::abs(state.modes[i] - expected) < 1e-13);
    }
  }
  SUBCASE("a sampled exponential mode lands on its own coefficient") {
    const std::array<int, 3> k0{2, -1, 0};
    std::vector<Cplx> values(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) {
      const auto pm = grid.mode_at(p);
      const double phase =
          2.0 * std::numbers::pi * (k0[0] * pm[0] + k0[1] * pm[1]) / grid.modes();
      values[p] = std::polar(1.0, phase);
    }
    const std::vector<Cplx> modes = forward_dft_complex(grid, values);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double expected = i == grid.linear_index(k0) ? 1.0 : 0.0;
      CHECK(std::abs(modes[i] - expected) < 1e-13);
    }
  }
}

TEST_CASE("fft path matches the direct DFT oracle and round-trips") {
  Rng rng(42);
  for (const int dim : {2, 3}) {
    for (const int requested : {5, 7, 9, 16}) {
      const Grid grid(dim, requested, 6.0, std::nullopt,
                      dim == 2 ? KernelForm::carleman : KernelForm::classical);
      const std::vector<double> values = test::random_values(rng, grid.size());
      std::vector<Cplx> cvalues(values.begin(), values.end());

      const SpectralState state = forward_dft(grid, values);
      const std::vector<Cplx> oracle = test::direct_forward(grid, cvalues);
      const double scale = test::max_abs(oracle);
      CHECK(test::max_abs_diff(state.modes, oracle) < 1e-12 * scale);

      const std::vector<double> back = inverse_dft(state);
      CHECK(test::max_abs_diff(back, values) < 1e-12 * test::max_abs(values));

      // oracle inverse agrees too
      const std::vector<Cplx> direct_back = test::direct_inverse(grid, state.modes);
      std::vector<double> direct_real(direct_back.size());
      for (std::size_t i = 0; i < direct_back.size(); ++i)
        direct_real[i] = direct_back[i].real();
      CHECK(test::max_abs_diff(direct_real, values) < 1e-11 * test::max_abs(values));
    }
  }
}

TEST_CASE("Parseval identity") {
  Rng rng(7);
  for (const int dim : {2, 3}) {
    const Grid grid(dim, 9, 6.0, std::nullopt,
                    dim == 2 ? KernelForm::carleman : KernelForm::classical);
    const std::vector<double> values = test::random_values(rng, grid.size());
    const SpectralState state = forward_dft(grid, values);
    double point_side = 0.0;
    for (double v : values) point_side += v * v;
    point_side /= static_cast<double>(grid.size());
    double mode_side = 0.0;
    for (const Cplx& c : state.modes) mode_side += std::norm(c);
    CHECK(point_side == doctest::Approx(mode_side).epsilon(1e-12));
  }
}

TEST_CASE("even-N reduction drops exactly the -N/2 modes") {
  SUBCASE("N = 4, d = 2: (-2, 0) is dropped, (1, -1) is kept") {
    const int N = 4;
    std::vector<Cplx> modes(16, Cplx{0.0, 0.0});
    const auto at = [N](int k1, int k2) {
      return static_cast<std::size_t>(k1 + N / 2) * N + (k2 + N / 2);
    };
    modes[at(-2, 0)] = Cplx{5.0, 1.0};
    modes[at(1, -1)] = Cplx{2.0, -3.0};
    const std::vector<Cplx> reduced = reduce_even_modes(modes, N, 2);
    REQUIRE(reduced.size() == 9);
    const auto rat = [](int k1, int k2) {
      return static_cast<std::size_t>(k1 + 1) * 3 + (k2 + 1);
    };
    CHECK(reduced[rat(1, -1)] == Cplx{2.0, -3.0});
    double other = 0.0;
    for (std::size_t i = 0; i < reduced.size(); ++i)
      if (i != rat(1, -1)) other += std::abs(reduced[i]);
    CHECK(other == 0.0);
  }
  SUBCASE("only the zero mode: unchanged apart from reindexing") {
    const int N = 4;
    std::vector<Cplx> modes(16, Cplx{0.0, 0.0});
    modes[static_cast<std::size_t>(0 + 2) * 4 + 2] = Cplx{1.5, 0.0};
    const std::vector<Cplx> reduced = reduce_even_modes(modes, N, 2);
    CHECK(reduced[4] == Cplx{1.5, 0.0});  // (0,0) of the 3x3 layout
  }
  SUBCASE("N = 6 random: the mass mode survives untouched") {
    Rng rng(3);
    std::vector<Cplx> modes(36);
    for (auto& m : modes) m = Cplx{rng.uniform(), rng.uniform()};
    const Cplx mass = modes[static_cast<std::size_t>(0 + 3) * 6 + 3];
    const std::vector<Cplx> reduced = reduce_even_modes(modes, 6, 2);
    CHECK(reduced[static_cast<std::size_t>(0 + 2) * 5 + 2] == mass);
  }
  CHECK_THROWS_AS(reduce_even_modes(std::vector<Cplx>(25), 5, 2), InvalidArgument);
}

TEST_CASE("hermitian defect and symmetrization") {
  Rng rng(19);
  const Grid grid(2, 9, 6.0);
  const std::vector<double> values = test::random_values(rng, grid.size());
  SpectralState state = forward_dft(grid, values);
  CHECK(state.hermitian_defect() < 1e-13);

  state.modes[3] += Cplx{0.0, 0.5};  // break the symmetry
  CHECK(state.hermitian_defect() > 1e-3);
  state.symmetrize();
  CHECK(state.hermitian_defect() < 1e-15);
}

TEST_CASE("inverse transform flags non-real states") {
  const Grid grid(2, 5, 6.0);
  SpectralState state(grid);
  state.modes[grid.linear_index({1, 0, 0})] = Cplx{0.0, 1.0};  // odd imaginary part
  CHECK_THROWS_AS(inverse_dft(state), NumericalError);
}
