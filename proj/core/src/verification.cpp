// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "efm/collision.hpp"
#include "efm/dvm.hpp"
#include "efm/fft.hpp"
#include "efm/filters.hpp"
#include "efm/kernel.hpp"
#include "efm/rng.hpp"

namespace efm {

namespace {

double rel_diff_inf(std::span<const Cplx> a, std::span<const Cplx> b) {
  double scale = 0.0;
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max(scale, std::abs(a[i]));
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

double rel_diff_inf(std::span<const double> a, std::span<const double> b) {
  double scale = 0.0;
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max(scale, std::abs(a[i]));
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

std::vector<double> random_values(Rng& rng, std::size_t count, double lo, double hi) {
  std::vector<double> out(count);
  for (double& v : out) v = rng.uniform(lo, hi);
  return out;
}

struct SmallGridFixture {
  Grid grid;
  std::vector<double> dense_plain;    // unfiltered kernel modes
  std::vector<double> dense_jackson;  // Jackson-filtered
  std::vector<double> dense_fejer;    // Fejer-filtered
};

SmallGridFixture make_fixture_2d(int modes, int angular_nodes, bool tamper) {
  Grid grid(2, modes, 6.0);
  KernelSpec spec = KernelSpec::for_grid(grid, angular_nodes);
  const KernelFactors2D factors = build_kernel_2d(spec);
  SmallGridFixture fx{grid, {}, {}, {}};
  fx.dense_plain = assemble_dense(
      apply_filter(factors, FilterWeights::make(FilterKind::none, grid.half_width())));
  if (tamper) {
    // flip one off-diagonal mode; symmetry and positivity checks must notice
    const std::size_t count = grid.size();
    fx.dense_plain[1 * count + 2] = -fx.dense_plain[1 * count + 2];
  }
  fx.dense_jackson = assemble_dense(apply_filter(
      factors, FilterWeights::make(FilterKind::jackson, grid.half_width())));
  fx.dense_fejer = assemble_dense(apply_filter(
      factors, FilterWeights::make(FilterKind::fejer, grid.half_width())));
  if (tamper) {
    const std::size_t count = grid.size();
    fx.dense_jackson[1 * count + 2] = -fx.dense_jackson[1 * count + 2];
  }
  return fx;
}

SmallGridFixture make_fixture_3d(int modes) {
  Grid grid(3, modes, 6.0, std::nullopt, KernelForm::classical);
  KernelSpec spec = KernelSpec::for_grid(grid);
  auto table = std::make_shared<KernelTable3D>(build_kernel_3d(spec));
  SmallGridFixture fx{grid, {}, {}, {}};
  fx.dense_plain = assemble_dense(
      apply_filter(table, FilterWeights::make(FilterKind::none, grid.half_width())),
      grid);
  fx.dense_jackson = assemble_dense(
      apply_filter(table, FilterWeights::make(FilterKind::jackson, grid.half_width())),
      grid);
  return fx;
}

double dense_symmetry_defect(const Grid& grid, std::span<const double> dense) {
  const std::size_t count = grid.size();
  double scale = 0.0;
  for (double v : dense) scale = std::max(scale, std::abs(v));
  double defect = 0.0;
  for (std::size_t l = 0; l < count; ++l)
    for (std::size_t m = 0; m < count; ++m) {
      const double b = dense[l * count + m];
      defect = std::max(defect, std::abs(b - dense[m * count + l]));
      defect = std::max(
          defect, std::abs(b - dense[grid.reflected_index(l) * count + m]));
    }
  return scale > 0.0 ? defect / scale : defect;
}

double dense_min(std::span<const double> values) {
  double min = values[0];
  for (double v : values) min = std::min(min, v);
  return min;
}

}  // namespace

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  Rng rng(options.seed);

  const auto add = [&out](std::string name, bool pass, double measured,
                          double threshold, std::string note) {
    out.push_back({std::move(name), pass, measured, threshold, std::move(note)});
  };
  // A tampered or otherwise broken kernel may abort a check with an
  // exception; that must surface as a failed check, not a crash.
  const auto guarded = [&add](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const std::exception& err) {
      add(name, false, 0.0, 0.0, std::string("aborted: ") + err.what());
    }
  };

  // --- filter kernel certification -------------------------------------
  for (const auto kind : {FilterKind::jackson, FilterKind::fejer}) {
    const FilterWeights w = FilterWeights::make(kind, 16);
    const KernelCertification cert = certify_kernel_nonnegative(w, 8, 2, 7.87);
    const std::string name = kind == FilterKind::jackson ? "jackson" : "fejer";
    add("filter-kernel-nonnegative-" + name, cert.min_value >= -1e-12, cert.min_value,
        -1e-12, "min of chi_N^sigma over the sampled box; must be >= threshold");
  }
  {
    const FilterWeights w = FilterWeights::make(FilterKind::none, 16);
    const KernelCertification cert = certify_kernel_nonnegative(w, 8, 2, 7.87);
    add("filter-kernel-dirichlet-negative-control", cert.min_value < 0.0,
        cert.min_value, 0.0, "the unfiltered Dirichlet kernel must oscillate below 0");
  }

  // --- 2D kernel structure ---------------------------------------------
  const SmallGridFixture fx9 = make_fixture_2d(9, 32, options.inject_fault);
  {
    const double defect = dense_symmetry_defect(fx9.grid, fx9.dense_plain);
    add("kernel-2d-symmetry", defect <= 1e-12, defect, 1e-12,
        "max relative defect of B(l,m) = B(m,l) = B(-l,m), N=9, M=32");
    const std::size_t zero = fx9.grid.linear_index({0, 0, 0});
    const double b00 = fx9.dense_plain[zero * fx9.grid.size() + zero];
    const double expected = 4.0 * 6.0 * 6.0;
    add("kernel-2d-b00", std::abs(b00 - expected) <= 1e-9 * expected, b00, expected,
        "B(0,0) must equal 4 R^2");
  }

  // --- fast vs direct equivalence, 2D ----------------------------------
  for (const Method method :
       {Method::fgm, Method::fcm, Method::efm, Method::efm_fejer}) {
    double worst = 0.0;
    for (const int N : {5, 9, 17}) {
      Grid grid(2, N, 6.0);
      KernelSpec spec = KernelSpec::for_grid(grid, 8);
      const Filtered2D kernel =
          apply_filter(build_kernel_2d(spec),
                       FilterWeights::make(method_filter(method), grid.half_width()));
      const std::vector<double> values = random_values(rng, grid.size(), 0.0, 1.0);
      const SpectralState state = forward_dft(grid, values);
      const std::vector<Cplx> fast =
          eval_collision_fast(grid, state.modes, kernel, method);
      const std::vector<Cplx> direct = eval_collision_direct(
          grid, state.modes, kernel, method_aliased(method));
      worst = std::max(worst, rel_diff_inf(fast, direct));
    }
    add("fast-vs-direct-2d-" + method_name(method), worst <= 1e-10, worst, 1e-10,
        "max relative difference over N in {5,9,17}");
  }

  // --- 3D: fast path vs naive dense evaluation -------------------------
  const SmallGridFixture fx3 = make_fixture_3d(5);
  {
    Grid grid = fx3.grid;
    KernelSpec spec = KernelSpec::for_grid(grid);
    auto table = std::make_shared<KernelTable3D>(build_kernel_3d(spec));
    const Filtered3D kernel =
        apply_filter(table, FilterWeights::make(FilterKind::jackson, grid.half_width()));
    const std::vector<double> values = random_values(rng, grid.size(), 0.0, 1.0);
    const SpectralState state = forward_dft(grid, values);
    const std::vector<Cplx> fast =
        eval_collision_3d(grid, state.modes, kernel, Method::efm);
    const DenseKernelView view(fx3.dense_jackson, grid.size());
    const std::vector<Cplx> direct =
        eval_collision_direct(grid, state.modes, view, true);
    const double diff = rel_diff_inf(fast, direct);
    add("fast-vs-direct-3d-efm", diff <= 1e-10, diff, 1e-10,
        "3D table evaluation vs naive dense double sum, N=5");
  }

  // --- mass mode is always zero -----------------------------------------
  {
    double worst = 0.0;
    for (const Method method :
         {Method::fgm, Method::fcm, Method::efm, Method::efm_fejer}) {
      Grid grid(2, 9, 6.0);
      KernelSpec spec = KernelSpec::for_grid(grid, 8);
      const Filtered2D kernel =
          apply_filter(build_kernel_2d(spec),
                       FilterWeights::make(method_filter(method), grid.half_width()));
      const std::vector<double> values = random_values(rng, grid.size(), 0.0, 1.0);
      const SpectralState state = forward_dft(grid, values);
      const std::vector<Cplx> q = eval_collision_fast(grid, state.modes, kernel, method);
      double scale = 0.0;
      for (const Cplx& v : q) scale = std::max(scale, std::abs(v));
      const double zero = std::abs(q[grid.linear_index({0, 0, 0})]);
      worst = std::max(worst, zero / std::max(scale, 1e-300));
    }
    add("collision-mass-mode-zero", worst <= 1e-12, worst, 1e-12,
        "relative magnitude of Q_hat_0 across all variants");
  }

  // --- spectral vs discrete-velocity equivalence ------------------------
  const auto dvm_equivalence = [&](const SmallGridFixture& fx,
                                   std::span<const double> dense,
                                   const std::string& label) {
    const GTable g = build_g(fx.grid, dense, true);
    const DvmCoefficients a = build_a(g, fx.grid);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<double> values =
          random_values(rng, fx.grid.size(), 0.0, 1.0);
      const SpectralState state = forward_dft(fx.grid, values);
      const DenseKernelView view(dense, fx.grid.size());
      const std::vector<Cplx> q_hat =
          eval_collision_direct(fx.grid, state.modes, view, true);
      const std::vector<double> q_spectral =
          inverse_dft(SpectralState(fx.grid, q_hat), 1e-9);
      const std::vector<double> q_nodes = q_dvm(values, a);
      worst = std::max(worst, rel_diff_inf(q_spectral, q_nodes));
    }
    add("dvm-equivalence-" + label, worst <= 1e-10, worst, 1e-10,
        "spectral evaluation vs quadruple sum, 20 random non-negative states");

    // mass identity of the quadruple sum itself
    const std::vector<double> values = random_values(rng, fx.grid.size(), 0.0, 1.0);
    const std::vector<double> q_nodes = q_dvm(values, a);
    double sum = 0.0;
    double scale = 0.0;
    for (double v : q_nodes) {
      sum += v;
      scale += std::abs(v);
    }
    add("dvm-mass-identity-" + label, std::abs(sum) <= 1e-12 * std::max(scale, 1.0),
        std::abs(sum) / std::max(scale, 1e-300), 1e-12,
        "sum_r Q_r over the quadruple sum");
  };
  {
    const SmallGridFixture fx5 = make_fixture_2d(5, 8, false);
    guarded("dvm-equivalence-2d-N5",
            [&] { dvm_equivalence(fx5, fx5.dense_jackson, "2d-N5"); });
    guarded("dvm-equivalence-2d-N9",
            [&] { dvm_equivalence(fx9, fx9.dense_jackson, "2d-N9"); });
    guarded("dvm-equivalence-3d-N5",
            [&] { dvm_equivalence(fx3, fx3.dense_jackson, "3d-N5"); });
  }

  // --- positivity dichotomy of G ----------------------------------------
  for (const int N : {5, 7, 9}) {
    const SmallGridFixture fx = N == 9 ? fx9 : make_fixture_2d(N, 8, options.inject_fault);
    guarded("g-nonnegative-jackson-2d-N" + std::to_string(N), [&] {
      const GTable gj = build_g(fx.grid, fx.dense_jackson, true);
      add("g-nonnegative-jackson-2d-N" + std::to_string(N),
          dense_min(gj.values) >= -1e-12, dense_min(gj.values), -1e-12,
          "min of the Jackson-filtered G table");
    });
    guarded("g-nonnegative-fejer-2d-N" + std::to_string(N), [&] {
      const GTable gf = build_g(fx.grid, fx.dense_fejer, true);
      add("g-nonnegative-fejer-2d-N" + std::to_string(N),
          dense_min(gf.values) >= -1e-12, dense_min(gf.values), -1e-12,
          "min of the Fejer-filtered G table");
    });
  }
  guarded("g-nonnegative-jackson-3d-N5", [&] {
    const GTable gj = build_g(fx3.grid, fx3.dense_jackson, true);
    add("g-nonnegative-jackson-3d-N5", dense_min(gj.values) >= -1e-12,
        dense_min(gj.values), -1e-12, "min of the Jackson-filtered 3D G table");
  });
  guarded("g-unfiltered-negative-2d-N9", [&] {
    const GTable gu = build_g(fx9.grid, fx9.dense_plain, false);
    add("g-unfiltered-negative-2d-N9", dense_min(gu.values) < 0.0,
        dense_min(gu.values), 0.0, "the unfiltered G table must attain negatives");
  });
  {
    // unfiltered G on a slice z0 = (T/2, T/2) at production resolution
    Grid grid(2, 32, 6.0);
    KernelSpec spec = KernelSpec::for_grid(grid, 8);
    const Filtered2D plain = apply_filter(
        build_kernel_2d(spec), FilterWeights::make(FilterKind::none, grid.half_width()));
    const std::vector<double> dense = assemble_dense(plain);
    const double T = grid.box();
    std::vector<std::array<double, 3>> ys;
    const int samples = 48;
    for (int a = 0; a < samples; ++a)
      for (int b = 0; b < samples; ++b)
        ys.push_back({-T + 2.0 * T * a / samples, -T + 2.0 * T * b / samples, 0.0});
    const std::vector<double> slice = g_slice(grid, dense, {T / 2.0, T / 2.0, 0.0}, ys);
    add("g-slice-unfiltered-negative-N32", dense_min(slice) < 0.0, dense_min(slice),
        0.0, "unfiltered G(y, (T/2,T/2)) sampled over the box must dip below 0");
  }

  // --- entropy dissipation of the quadruple sum -------------------------
  {
    const SmallGridFixture fx5 = make_fixture_2d(5, 8, false);
    const GTable g = build_g(fx5.grid, fx5.dense_jackson, true);
    const DvmCoefficients a = build_a(g, fx5.grid);
    double worst = -1e300;
    for (int trial = 0; trial < 100; ++trial) {
      const std::vector<double> values =
          random_values(rng, fx5.grid.size(), 0.1, 1.0);
      const std::vector<double> q_nodes = q_dvm(values, a);
      double production = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i)
        production += q_nodes[i] * std::log(values[i]);
      worst = std::max(worst, production);
    }
    add("entropy-dissipation-2d-N5", worst <= 1e-12, worst, 1e-12,
        "max of sum_r Q_r ln F_r over 100 random strictly positive states");
  }

  return out;
}

}  // namespace efm
