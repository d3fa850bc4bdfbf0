// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "efm/collision.hpp"
#include "efm/dvm.hpp"
#include "efm/fft.hpp"
#include "test_helpers.hpp"

using namespace efm;

namespace {

std::vector<double> dense_kernel(const Grid& grid, FilterKind filter, int angular = 8) {
  return assemble_dense(apply_filter(build_kernel_2d(KernelSpec::for_grid(grid, angular)),
                                     FilterWeights::make(filter, grid.half_width())));
}

double table_min(const GTable& table) {
  double min = table.values[0];
  for (double v : table.values) min = std::min(min, v);
  return min;
}

}  // namespace

TEST_CASE("G at the origin is the plain sum of kernel modes") {
  const Grid grid(2, 5, 6.0);
  const std::vector<double> dense = dense_kernel(grid, FilterKind::jackson);
  const GTable g = build_g(grid, dense, true);
  long double expected = 0.0L;
  for (double v : dense) expected += v;
  const std::size_t zero = grid.linear_index({0, 0, 0});
  CHECK(g.at(zero, zero, grid.size()) ==
        doctest::Approx(static_cast<double>(expected)).epsilon(1e-12));
}

TEST_CASE("filtered G tables are non-negative, the unfiltered one is not") {
  for (const int N : {5, 7, 9}) {
    const Grid grid(2, N, 6.0);
    CHECK(table_min(build_g(grid, dense_kernel(grid, FilterKind::jackson), true)) >=
          -1e-12);
    CHECK(table_min(build_g(grid, dense_kernel(grid, FilterKind::fejer), true)) >=
          -1e-12);
  }
  const Grid grid(2, 9, 6.0);
  CHECK(table_min(build_g(grid, dense_kernel(grid, FilterKind::none), false)) < 0.0);
}

TEST_CASE("3D filtered G table is non-negative at N = 5") {
  const Grid grid(3, 5, 6.0, std::nullopt, KernelForm::classical);
  auto table = std::make_shared<KernelTable3D>(build_kernel_3d(KernelSpec::for_grid(grid)));
  const std::vector<double> dense = assemble_dense(
      apply_filter(table, FilterWeights::make(FilterKind::jackson, grid.half_width())),
      grid);
  CHECK(table_min(build_g(grid, dense, true)) >= -1e-12);
}

TEST_CASE("the memory guard rejects production-size grids") {
  const Grid grid(2, 11, 6.0);
  const std::vector<double> dense(grid.size() * grid.size(), 0.0);
  CHECK_THROWS_AS(build_g(grid, dense), InvalidArgument);
  const Grid g3(3, 7, 6.0, std::nullopt, KernelForm::classical);
  const std::vector<double> dense3(g3.size() * g3.size(), 0.0);
  CHECK_THROWS_AS(build_g(g3, dense3), InvalidArgument);
}

TEST_CASE("coefficients: symmetry, support, and the loss-side identity") {
  const Grid grid(2, 5, 6.0);
  const std::vector<double> dense = dense_kernel(grid, FilterKind::jackson);
  const GTable g = build_g(grid, dense, true);
  const DvmCoefficients coeffs = build_a(g, grid);
  const int N = grid.modes();
  const std::size_t count = grid.size();

  std::map<std::array<std::uint32_t, 4>, double> lookup;
  for (const auto& e : coeffs.entries) lookup[{e.p, e.q, e.r, e.s}] = e.value;

  SUBCASE("A^{rs}_{pq} = A^{rs}_{qp} = A^{pq}_{rs} exactly") {
    Rng rng(53);
    for (int trial = 0; trial < 500; ++trial) {
      const auto& e = coeffs.entries[rng.below(coeffs.entries.size())];
      const auto swapped = lookup.find({e.q, e.p, e.r, e.s});
      const auto transposed = lookup.find({e.r, e.s, e.p, e.q});
      REQUIRE(swapped != lookup.end());
      REQUIRE(transposed != lookup.end());
      CHECK(swapped->second == e.value);       // exact, same table lookups
      CHECK(transposed->second == e.value);
    }
  }

  SUBCASE("support: stored entries satisfy r + s = p + q mod N") {
    Rng rng(59);
    for (int trial = 0; trial < 500; ++trial) {
      const auto& e = coeffs.entries[rng.below(coeffs.entries.size())];
      const auto pm = grid.mode_at(e.p);
      const auto qm = grid.mode_at(e.q);
      const auto rm = grid.mode_at(e.r);
      const auto sm = grid.mode_at(e.s);
      for (int c = 0; c < 2; ++c)
        CHECK(symmetric_mod(rm[c] + sm[c] - pm[c] - qm[c], N) == 0);
    }
  }

  SUBCASE("sum over p,q matches the closed-form loss expression") {
    // sum_{p,q} A^{rs}_{pq} = N^{-d} sum_{k+j=0 mod N} B(j,j) E_k(r) E_j(s)
    std::vector<double> lhs(count * count, 0.0);
    for (const auto& e : coeffs.entries)
      lhs[static_cast<std::size_t>(e.r) * count + e.s] += e.value;

    Rng rng(61);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = rng.below(count);
      const std::size_t s = rng.below(count);
      const auto rm = grid.mode_at(r);
      const auto sm = grid.mode_at(s);
      Cplx rhs{0.0, 0.0};
      for (std::size_t j = 0; j < count; ++j) {
        const auto jm = grid.mode_at(j);
        // k = -j mod N is the only k with a nonzero indicator
        const std::array<int, 3> km = symmetric_mod({-jm[0], -jm[1], 0}, N);
        double phase = 0.0;
        for (int c = 0; c < 2; ++c)
          phase += 2.0 * std::numbers::pi * (km[c] * rm[c] + jm[c] * sm[c]) / N;
        rhs += dense[j * count + j] * std::polar(1.0, phase);
      }
      rhs /= static_cast<double>(count);
      CHECK(std::abs(rhs.imag()) < 1e-10);
      CHECK(lhs[r * count + s] == doctest::Approx(rhs.real()).epsilon(1e-10));
    }
  }
}

TEST_CASE("quadruple sum: zero on uniform states and mass conserving") {
  const Grid grid(2, 5, 6.0);
  const GTable g = build_g(grid, dense_kernel(grid, FilterKind::jackson), true);
  const DvmCoefficients coeffs = build_a(g, grid);

  const std::vector<double> uniform(grid.size(), 0.3);
  CHECK(test::max_abs(q_dvm(uniform, coeffs)) < 1e-13);

  Rng rng(67);
  const std::vector<double> values = test::random_values(rng, grid.size());
  const std::vector<double> q = q_dvm(values, coeffs);
  double sum = 0.0;
  double scale = 0.0;
  for (double v : q) {
    sum += v;
    scale += std::abs(v);
  }
  CHECK(std::abs(sum) <= 1e-12 * scale);
}

TEST_CASE("quadruple sum equals the spectral evaluation at the nodes") {
  Rng rng(71);
  const Grid grid(2, 5, 6.0);
  const std::vector<double> dense = dense_kernel(grid, FilterKind::jackson);
  const GTable g = build_g(grid, dense, true);
  const DvmCoefficients coeffs = build_a(g, grid);
  const DenseKernelView view(dense, grid.size());

  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<double> values = test::random_values(rng, grid.size());
    const SpectralState state = forward_dft(grid, values);
    const std::vector<Cplx> q_hat = eval_collision_direct(grid, state.modes, view, true);
    const std::vector<double> spectral = inverse_dft(SpectralState(grid, q_hat), 1e-9);
    const std::vector<double> nodes = q_dvm(values, coeffs);
    CHECK(test::max_abs_diff(spectral, nodes) <= 1e-10 * test::max_abs(nodes));
  }
}

TEST_CASE("entropy production of the filtered quadruple sum is non-positive") {
  Rng rng(73);
  const Grid grid(2, 5, 6.0);
  const GTable g = build_g(grid, dense_kernel(grid, FilterKind::jackson), true);
  const DvmCoefficients coeffs = build_a(g, grid);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> values = test::random_values(rng, grid.size(), 0.05, 1.0);
    const std::vector<double> q = q_dvm(values, coeffs);
    double production = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      production += q[i] * std::log(values[i]);
    CHECK(production <= 1e-12);
  }
}

TEST_CASE("the slice evaluator agrees with the table on lattice points") {
  const Grid grid(2, 5, 6.0);
  const std::vector<double> dense = dense_kernel(grid, FilterKind::none);
  const GTable g = build_g(grid, dense, false);

  const std::size_t z_index = grid.linear_index({1, -2, 0});
  const std::array<double, 3> z0 = grid.node_at(z_index);
  std::vector<std::array<double, 3>> ys(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) ys[i] = grid.node_at(i);
  const std::vector<double> slice = g_slice(grid, dense, z0, ys);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(slice[i] ==
          doctest::Approx(g.at(i, z_index, grid.size())).epsilon(1e-10));
}
