// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <benchmark/benchmark.h>

#include "efm/fft.hpp"
#include "efm/problems.hpp"
#include "efm/rng.hpp"

namespace {

using namespace efm;

void BM_ForwardTransform2D(benchmark::State& state) {
  Grid grid(2, static_cast<int>(state.range(0)), 6.0);
  Rng rng(1);
  std::vector<double> values(grid.size());
  for (double& v : values) v = rng.uniform();
  for (auto _ : state) {
    auto out = forward_dft(grid, values);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_ForwardTransform2D)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_CircularConvolve2D(benchmark::State& state) {
  Grid grid(2, static_cast<int>(state.range(0)), 6.0);
  Rng rng(2);
  std::vector<Cplx> a(grid.size());
  std::vector<Cplx> b(grid.size());
  for (auto& v : a) v = Cplx{rng.uniform(), rng.uniform()};
  for (auto& v : b) v = Cplx{rng.uniform(), rng.uniform()};
  for (auto _ : state) {
    auto out = fft::circular_convolve(2, grid.modes(), a, b);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_CircularConvolve2D)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_PaddedConvolve2D(benchmark::State& state) {
  Grid grid(2, static_cast<int>(state.range(0)), 6.0);
  Rng rng(3);
  std::vector<Cplx> a(grid.size());
  std::vector<Cplx> b(grid.size());
  for (auto& v : a) v = Cplx{rng.uniform(), rng.uniform()};
  for (auto& v : b) v = Cplx{rng.uniform(), rng.uniform()};
  for (auto _ : state) {
    auto out = fft::padded_convolve(2, grid.modes(), a, b);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_PaddedConvolve2D)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
