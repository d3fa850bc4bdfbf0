// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "efm/kernel.hpp"
#include "efm/quadrature.hpp"
#include "test_helpers.hpp"

using namespace efm;

TEST_CASE("psi_r: closed form vs quadrature of the defining integral") {
  const double R = 6.0;
  const double T = 7.87;
  SUBCASE("orthogonal direction integrates the constant") {
    CHECK(psi_r(0.0, R, T) == doctest::Approx(2.0 * R));
    const int l[2] = {0, 3};
    const double e[2] = {1.0, 0.0};
    CHECK(psi_r(std::span<const int>(l, 2), std::span<const double>(e, 2), R, T) ==
          doctest::Approx(2.0 * R));
  }
  SUBCASE("l = (1,0), e = (1,0) against adaptive quadrature") {
    const auto integrand = [&](double rho) {
      return std::cos(std::numbers::pi * rho / T);  // imaginary part is odd
    };
    const double reference = adaptive_simpson(integrand, -R, R, 1e-12);
    CHECK(psi_r(1.0, R, T) == doctest::Approx(reference).epsilon(1e-10));
    CHECK(psi_r(1.0, R, T) ==
          doctest::Approx(12.0 * std::sin(6.0 * std::numbers::pi / 7.87) /
                          (6.0 * std::numbers::pi / 7.87)));
  }
  SUBCASE("even in l") {
    for (double dot : {0.3, 1.0, 2.7, 5.5})
      CHECK(psi_r(dot, R, T) == psi_r(-dot, R, T));
  }
  SUBCASE("non-unit direction rejected") {
    const int l[2] = {1, 0};
    const double e[2] = {1.0, 1.0};
    CHECK_THROWS_AS(
        psi_r(std::span<const int>(l, 2), std::span<const double>(e, 2), R, T),
        InvalidArgument);
  }
}

TEST_CASE("2D kernel: B(0,0) and the angular quadrature limit") {
  const Grid grid(2, 9, 6.0);
  const KernelSpec spec = KernelSpec::for_grid(grid, 16);
  const KernelFactors2D factors = build_kernel_2d(spec);
  const std::size_t zero = grid.linear_index({0, 0, 0});

  CHECK(factors.entry(zero, zero) == doctest::Approx(144.0).epsilon(1e-12));

  // high-resolution trapezoid oracle for the angular integral over [0, pi)
  const double R = grid.radius();
  const double T = grid.box();
  const auto oracle = [&](const std::array<int, 3>& l, const std::array<int, 3>& m) {
    const int steps = 200000;
    double sum = 0.0;
    for (int s = 0; s < steps; ++s) {
      const double theta = (s + 0.5) * std::numbers::pi / steps;
      const double c = std::cos(theta);
      const double si = std::sin(theta);
      sum += psi_r(l[0] * c + l[1] * si, R, T) *
             psi_r(-m[0] * si + m[1] * c, R, T);
    }
    return sum * (std::numbers::pi / steps) / std::numbers::pi;  // Btilde = 1/pi
  };
  for (const auto& [l, m] : std::vector<std::pair<std::array<int, 3>, std::array<int, 3>>>{
           {{1, 0, 0}, {0, 1, 0}}, {{2, -1, 0}, {3, 3, 0}}, {{-4, 2, 0}, {1, -2, 0}}}) {
    const double fast = factors.entry(grid.linear_index(l), grid.linear_index(m));
    CHECK(fast == doctest::Approx(oracle(l, m)).epsilon(1e-10));
  }
}

TEST_CASE("2D kernel symmetries on random mode pairs") {
  Rng rng(5);
  const Grid grid(2, 9, 6.0);
  const KernelFactors2D factors = build_kernel_2d(KernelSpec::for_grid(grid, 32));
  const std::size_t zero = grid.linear_index({0, 0, 0});
  const double scale = factors.entry(zero, zero);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t l = rng.below(grid.size());
    const std::size_t m = rng.below(grid.size());
    const double b = factors.entry(l, m);
    CHECK(std::abs(b - factors.entry(m, l)) <= 1e-12 * scale);
    CHECK(std::abs(b - factors.entry(grid.reflected_index(l), m)) <= 1e-12 * scale);
  }
}

TEST_CASE("2D low-rank factorization converges in the node count") {
  const Grid grid(2, 16, 6.0);
  const FilterWeights none = FilterWeights::make(FilterKind::none, grid.half_width());
  const std::vector<double> dense64 =
      assemble_dense(apply_filter(build_kernel_2d(KernelSpec::for_grid(grid, 64)), none));
  const std::vector<double> dense128 = assemble_dense(
      apply_filter(build_kernel_2d(KernelSpec::for_grid(grid, 128)), none));
  CHECK(test::max_abs_diff(dense64, dense128) <= 1e-8);
}

TEST_CASE("3D kernel table: analytic pins and Monte Carlo oracle") {
  const Grid grid(3, 9, 6.0, std::nullopt, KernelForm::classical);
  const KernelSpec spec = KernelSpec::for_grid(grid);
  const KernelTable3D table = build_kernel_3d(spec);
  const double R = grid.radius();
  const double T = grid.box();

  SUBCASE("Phi(0,0) integrates r^2") {
    CHECK(table.phi_at(0, 0) ==
          doctest::Approx(4.0 * std::numbers::pi * R * R * R / 3.0).epsilon(1e-12));
  }
  SUBCASE("Phi is symmetric") {
    for (int a2 : {0, 1, 5, 40})
      for (int b2 : {2, 3, 17}) CHECK(table.phi_at(a2, b2) == table.phi_at(b2, a2));
  }
  SUBCASE("entries match Monte Carlo quadrature of the classical-form integral") {
    // sample g uniform in B_R, omega uniform on S^2;
    // estimate E[B E_l((g+|g|w)/2) E_m((g-|g|w)/2)] * |B_R| * |S^2|
    Rng rng(99);
    const auto normal = [&rng]() {
      const double u1 = std::max(rng.uniform(), 1e-300);
      const double u2 = rng.uniform();
      return std::sqrt(-2.0 * std::log(u1)) *
             std::cos(2.0 * std::numbers::pi * u2);
    };
    const auto unit_vector = [&]() {
      double x = normal();
      double y = normal();
      double z = normal();
      const double norm = std::sqrt(x * x + y * y + z * z);
      return std::array<double, 3>{x / norm, y / norm, z / norm};
    };

    const std::array<std::pair<std::array<int, 3>, std::array<int, 3>>, 5> pairs{
        {{{0, 0, 0}, {0, 0, 0}},
         {{1, 0, 0}, {0, 1, 0}},
         {{2, 1, -1}, {0, 2, 2}},
         {{-3, 1, 0}, {1, 1, 1}},
         {{4, 0, -2}, {-1, 3, 0}}}};
    const long samples = 10'000'000;
    const double measure = (4.0 / 3.0) * std::numbers::pi * R * R * R  // |B_R|
                           * 4.0 * std::numbers::pi;                   // |S^2|
    const double b_const = 1.0 / (4.0 * std::numbers::pi);

    for (const auto& [l, m] : pairs) {
      long double sum = 0.0L;
      long double sum_sq = 0.0L;
      Rng local(rng.next_u64());
      for (long s = 0; s < samples; ++s) {
        const auto gdir = unit_vector();
        const double r = R * std::cbrt(local.uniform());
        const auto omega = unit_vector();
        double phase = 0.0;
        for (int c = 0; c < 3; ++c) {
          const double g = r * gdir[c];
          const double vp = 0.5 * (g + r * omega[c]);
          const double vm = 0.5 * (g - r * omega[c]);
          phase += (l[c] * vp + m[c] * vm) * std::numbers::pi / T;
        }
        const double value = b_const * std::cos(phase);
        sum += value;
        sum_sq += value * value;
      }
      const double mean = static_cast<double>(sum / samples);
      const double variance =
          std::max(static_cast<double>(sum_sq / samples) - mean * mean, 0.0);
      const double estimate = mean * measure;
      const double sigma = std::sqrt(variance / samples) * measure;
      const double exact = table.entry(l, m);
      INFO("estimate " << estimate << " exact " << exact << " sigma " << sigma);
      CHECK(std::abs(estimate - exact) <= 3.0 * sigma + 1e-9 * std::abs(exact) + 1e-9);
    }
  }
}

TEST_CASE("filters fold into the kernel consistently") {
  const Grid grid(2, 9, 6.0);
  const KernelFactors2D factors = build_kernel_2d(KernelSpec::for_grid(grid, 8));
  const FilterWeights jackson =
      FilterWeights::make(FilterKind::jackson, grid.half_width());
  const FilterWeights none = FilterWeights::make(FilterKind::none, grid.half_width());

  SUBCASE("identity filter changes nothing") {
    const Filtered2D plain = apply_filter(factors, none);
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t l = rng.below(grid.size());
      const std::size_t m = rng.below(grid.size());
      CHECK(plain.entry(l, m) == doctest::Approx(factors.entry(l, m)).epsilon(1e-15));
    }
  }
  SUBCASE("diagonal carries sigma squared") {
    const Filtered2D filtered = apply_filter(factors, jackson);
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t m = rng.below(grid.size());
      const double sigma = jackson.tensor_weight(grid.mode_at(m), 2);
      CHECK(filtered.diagonal(m) ==
            doctest::Approx(sigma * sigma * factors.entry(m, m)).epsilon(1e-12));
    }
  }
  SUBCASE("filter-then-assemble equals assemble-then-multiply") {
    const Filtered2D filtered = apply_filter(factors, jackson);
    const std::vector<double> dense_filtered = assemble_dense(filtered);
    const std::vector<double> dense_plain = assemble_dense(apply_filter(factors, none));
    const std::vector<double> sigma = jackson.mode_weights(grid);
    double worst = 0.0;
    for (std::size_t l = 0; l < grid.size(); ++l)
      for (std::size_t m = 0; m < grid.size(); ++m)
        worst = std::max(worst,
                         std::abs(dense_filtered[l * grid.size() + m] -
                                  sigma[l] * sigma[m] * dense_plain[l * grid.size() + m]));
    CHECK(worst <= 1e-12 * test::max_abs(dense_plain));
  }
  SUBCASE("3D lazy filtering matches the table") {
    const Grid g3(3, 5, 6.0, std::nullopt, KernelForm::classical);
    auto table = std::make_shared<KernelTable3D>(
        build_kernel_3d(KernelSpec::for_grid(g3)));
    const FilterWeights w = FilterWeights::make(FilterKind::jackson, g3.half_width());
    const Filtered3D filtered = apply_filter(table, w);
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t l = rng.below(g3.size());
      const std::size_t m = rng.below(g3.size());
      const double expected = w.tensor_weight(g3.mode_at(l), 3) *
                              w.tensor_weight(g3.mode_at(m), 3) *
                              table->entry(g3.mode_at(l), g3.mode_at(m));
      CHECK(filtered.entry(l, m, g3) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("dense assembly refuses oversized kernels") {
  const Grid grid(2, 65, 6.0);
  const Filtered2D kernel =
      apply_filter(build_kernel_2d(KernelSpec::for_grid(grid, 2)),
                   FilterWeights::make(FilterKind::none, grid.half_width()));
  CHECK_THROWS_AS(assemble_dense(kernel), InvalidArgument);
}
