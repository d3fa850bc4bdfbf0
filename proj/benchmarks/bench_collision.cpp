// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <benchmark/benchmark.h>

#include <map>

#include "efm/collision.hpp"
#include "efm/fft.hpp"
#include "efm/problems.hpp"

namespace {

using namespace efm;

struct Fixture2D {
  Grid grid;
  Filtered2D kernel;
  SpectralState state;
};

const Fixture2D& fixture_2d(int modes) {
  static std::map<int, Fixture2D> cache;
  auto it = cache.find(modes);
  if (it == cache.end()) {
    Grid grid(2, modes, 6.0);
    Filtered2D kernel =
        apply_filter(build_kernel_2d(KernelSpec::for_grid(grid, 8)),
                     FilterWeights::make(FilterKind::jackson, grid.half_width()));
    SpectralState state = initialize(Problem::bkw_2d, grid, InitMode::interpolation);
    it = cache.emplace(modes, Fixture2D{grid, std::move(kernel), std::move(state)})
             .first;
  }
  return it->second;
}

struct Fixture3D {
  Grid grid;
  Filtered3D kernel;
  SpectralState state;
};

const Fixture3D& fixture_3d(int modes) {
  static std::map<int, Fixture3D> cache;
  auto it = cache.find(modes);
  if (it == cache.end()) {
    Grid grid(3, modes, 6.0, std::nullopt, KernelForm::classical);
    auto table =
        std::make_shared<KernelTable3D>(build_kernel_3d(KernelSpec::for_grid(grid)));
    Filtered3D kernel =
        apply_filter(table, FilterWeights::make(FilterKind::jackson, grid.half_width()));
    SpectralState state = initialize(Problem::bkw_3d, grid, InitMode::interpolation);
    it = cache.emplace(modes, Fixture3D{grid, std::move(kernel), std::move(state)})
             .first;
  }
  return it->second;
}

void BM_CollisionFast2D(benchmark::State& state) {
  const Fixture2D& fx = fixture_2d(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto q = eval_collision_fast(fx.grid, fx.state.modes, fx.kernel, Method::efm);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_CollisionFast2D)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_CollisionDirect2D(benchmark::State& state) {
  const Fixture2D& fx = fixture_2d(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto q = eval_collision_direct(fx.grid, fx.state.modes, fx.kernel, true);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_CollisionDirect2D)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Collision3D(benchmark::State& state) {
  const Fixture3D& fx = fixture_3d(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto q = eval_collision_3d(fx.grid, fx.state.modes, fx.kernel, Method::efm);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_Collision3D)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_KernelBuild2D(benchmark::State& state) {
  Grid grid(2, static_cast<int>(state.range(0)), 6.0);
  const KernelSpec spec = KernelSpec::for_grid(grid, 8);
  for (auto _ : state) {
    auto factors = build_kernel_2d(spec);
    benchmark::DoNotOptimize(factors);
  }
}
BENCHMARK(BM_KernelBuild2D)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_KernelBuild3D(benchmark::State& state) {
  Grid grid(3, static_cast<int>(state.range(0)), 6.0, std::nullopt,
            KernelForm::classical);
  const KernelSpec spec = KernelSpec::for_grid(grid);
  for (auto _ : state) {
    auto table = build_kernel_3d(spec);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_KernelBuild3D)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
