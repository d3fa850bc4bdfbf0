// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "efm/fft.hpp"

namespace efm {

void SimulationConfig::validate() const {
  detail::require(modes >= 3, "config: N must be at least 3");
  detail::require(support_radius > 0.0, "config: R must be positive");
  detail::require(dt > 0.0, "config: dt must be positive");
  detail::require(t_end >= 0.0, "config: t_end must be non-negative");
  detail::require(output_every >= 1, "config: output_every must be >= 1");
  detail::require(angular_nodes >= 1, "config: M must be >= 1");
  detail::require(radial_nodes >= 8, "config: Mr must be >= 8");
  detail::require(threads >= 1, "config: threads must be >= 1");
  if (mollifier_width.has_value())
    detail::require(*mollifier_width > 0.0, "config: mollifier width must be positive");
  if (problem == Problem::discontinuous_2d && init_mode() == InitMode::interpolation &&
      mollifier_width.has_value())
    detail::require(*mollifier_width > 0.0,
                    "config: interpolating discontinuous data requires a positive "
                    "mollifier width");
  for (double t : snapshot_times)
    detail::require(t >= 0.0 && t <= t_end + 1e-12,
                    "config: snapshot times must lie within [0, t_end]");
}

Grid make_grid(const SimulationConfig& config) {
  config.validate();
  return Grid(config.dim(), config.modes, config.support_radius,
              config.box_half_width, config.kernel_form(),
              config.allow_undersized_box);
}

FilteredKernel prepare_kernel(const SimulationConfig& config, const Grid& grid,
                              CacheStats* stats) {
  const FilterWeights weights =
      FilterWeights::make(method_filter(config.method), grid.half_width());
  if (grid.dim() == 2) {
    KernelSpec spec = KernelSpec::for_grid(grid, config.angular_nodes,
                                           config.radial_nodes);
    const KernelFactors2D factors = load_or_build_2d(spec, config.cache_dir, stats);
    return FilteredKernel(apply_filter(factors, weights));
  }
  KernelSpec spec = KernelSpec::for_grid(grid, config.angular_nodes,
                                         config.radial_nodes);
  auto table = std::make_shared<KernelTable3D>(
      load_or_build_3d(spec, config.cache_dir, stats));
  return FilteredKernel(apply_filter(std::move(table), weights));
}

std::optional<std::vector<double>> exact_nodes(Problem problem, const Grid& grid,
                                               double t) {
  if (!problem_has_exact(problem)) return std::nullopt;
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = exact_density(problem, t, grid.node_at(i));
  return out;
}

SliceData extract_slice(const SpectralState& state, std::span<const double> values,
                        Problem problem) {
  const Grid& grid = state.grid;
  const int N = grid.modes();
  const int n = grid.half_width();
  SliceData slice;
  slice.time = state.time;
  slice.coordinate.resize(N);
  slice.value.resize(N);
  slice.exact.resize(N);
  const bool exact = problem_has_exact(problem);
  for (int k = -n; k <= n; ++k) {
    std::array<int, 3> idx{k, 0, 0};
    const std::size_t lin = grid.linear_index(idx);
    slice.coordinate[k + n] = grid.spacing() * k;
    slice.value[k + n] = values[lin];
    slice.exact[k + n] =
        exact ? exact_density(problem, state.time, grid.node_at(lin))
              : std::numeric_limits<double>::quiet_NaN();
  }
  return slice;
}

SimulationResult run_simulation(const SimulationConfig& config) {
  config.validate();
  const auto t_start = std::chrono::steady_clock::now();
  set_max_threads(config.threads);

  const Grid grid = make_grid(config);
  CacheStats cache;
  const FilteredKernel kernel = prepare_kernel(config, grid, &cache);
  const CollisionOperator op(grid, config.method, kernel);

  const double mollifier =
      config.mollifier_width.value_or(0.0);  // 0 -> default h inside initialize
  SpectralState state = initialize(config.problem, grid, config.init_mode(), mollifier);

  SimulationResult result{grid, {}, state, {}, {}, {}, cache, 0.0};

  // Snapshot bookkeeping: each requested time must land on a step boundary.
  std::vector<long> snapshot_steps;
  for (double t : config.snapshot_times) {
    const long step = std::llround(t / config.dt);
    detail::require(std::abs(step * config.dt - t) < 1e-9,
                    "config: snapshot times must be multiples of dt");
    snapshot_steps.push_back(step);
  }
  const long total_steps = std::llround(config.t_end / config.dt);

  const bool has_exact = problem_has_exact(config.problem);
  const SpectralRhs rhs = [&op](const SpectralState& s) { return op.apply(s.modes); };

  const StepObserver observer = [&](const SpectralState& s, int step) {
    const bool record =
        step % config.output_every == 0 || step == total_steps || step == 0;
    const bool snapshot = std::find(snapshot_steps.begin(), snapshot_steps.end(),
                                    static_cast<long>(step)) != snapshot_steps.end();
    if (!record && !snapshot) return;
    const std::vector<double> values = inverse_dft(s);
    if (record) {
      std::optional<std::vector<double>> exact =
          has_exact ? exact_nodes(config.problem, grid, s.time) : std::nullopt;
      result.records.push_back(
          compute_diagnostics(s, values, exact ? &*exact : nullptr));
    }
    if (snapshot) {
      result.slices.push_back(extract_slice(s, values, config.problem));
      if (config.dump_fields) result.fields.push_back({s.time, values});
    }
  };

  // observer sees every step; the output cadence is applied above
  TimeSpec time{config.dt, config.t_end, 1};
  result.final_state = integrate(std::move(state), rhs, time, observer);
  result.final_values = inverse_dft(result.final_state);

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

}  // namespace efm
