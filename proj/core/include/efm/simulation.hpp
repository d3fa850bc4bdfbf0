// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "efm/collision.hpp"
#include "efm/diagnostics.hpp"
#include "efm/grid.hpp"
#include "efm/integrator.hpp"
#include "efm/kernel_cache.hpp"
#include "efm/problems.hpp"

namespace efm {

/// Everything needed to reproduce a run exactly.
struct SimulationConfig {
  Problem problem = Problem::bkw_2d;
  Method method = Method::efm;
  int modes = 32;                     // requested N (even values reduce to N-1)
  double support_radius = 6.0;        // R
  std::optional<double> box_half_width;  // T; defaults from the kernel form
  bool allow_undersized_box = false;
  int angular_nodes = 8;              // M (2D kernels)
  int radial_nodes = 64;              // Gauss-Legendre nodes (3D kernels)
  double dt = 0.01;
  double t_end = 1.0;
  int output_every = 1;
  std::optional<InitMode> init;       // defaults from the method
  std::optional<double> mollifier_width;  // defaults to h
  std::vector<double> snapshot_times;     // v1 slices (and field dumps) here
  bool dump_fields = false;
  std::string cache_dir;              // empty disables the kernel cache
  std::uint64_t seed = 0;             // recorded; runs themselves are deterministic
  int threads = 1;

  void validate() const;
  int dim() const { return problem_dim(problem); }
  InitMode init_mode() const { return init.value_or(default_init_mode(method)); }
  KernelForm kernel_form() const {
    return dim() == 2 ? KernelForm::carleman : KernelForm::classical;
  }
};

struct SliceData {
  double time = 0.0;
  std::vector<double> coordinate;  // v1 along the slice
  std::vector<double> value;
  std::vector<double> exact;  // NaN-filled when no reference exists
};

struct FieldDump {
  double time = 0.0;
  std::vector<double> values;  // full grid, lexicographic
};

struct SimulationResult {
  Grid grid;
  std::vector<DiagnosticsRecord> records;
  SpectralState final_state;
  std::vector<double> final_values;
  std::vector<SliceData> slices;
  std::vector<FieldDump> fields;
  CacheStats cache;
  double wall_seconds = 0.0;
};

Grid make_grid(const SimulationConfig& config);
/// Build (or load) the kernel for the configured method and wrap it with the
/// method's filter.
FilteredKernel prepare_kernel(const SimulationConfig& config, const Grid& grid,
                              CacheStats* stats = nullptr);

/// Exact/reference values on the grid nodes at time t, when the problem has
/// a closed-form solution (empty otherwise).
std::optional<std::vector<double>> exact_nodes(Problem problem, const Grid& grid,
                                               double t);

/// Run the configured simulation: initialize, integrate with per-cadence
/// diagnostics, capture slices/fields at the snapshot times.
SimulationResult run_simulation(const SimulationConfig& config);

/// v1 slice through the origin of the remaining axes.
SliceData extract_slice(const SpectralState& state, std::span<const double> values,
                        Problem problem);

}  // namespace efm
