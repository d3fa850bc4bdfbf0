// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/problems.hpp"

#include <cmath>
#include <numbers>

#include "efm/fft.hpp"
#include "efm/quadrature.hpp"

namespace efm {

int problem_dim(Problem problem) { return problem == Problem::bkw_3d ? 3 : 2; }

bool problem_has_exact(Problem problem) {
  return problem == Problem::bkw_2d || problem == Problem::bkw_3d;
}

bool problem_smooth(Problem problem) { return problem != Problem::discontinuous_2d; }

std::string problem_name(Problem problem) {
  switch (problem) {
    case Problem::bkw_2d:
      return "bkw2d";
    case Problem::bkw_3d:
      return "bkw3d";
    case Problem::bigaussian_2d:
      return "bigaussian2d";
    case Problem::discontinuous_2d:
      return "discontinuous2d";
  }
  return "?";
}

Problem problem_from_name(const std::string& name) {
  if (name == "bkw2d") return Problem::bkw_2d;
  if (name == "bkw3d") return Problem::bkw_3d;
  if (name == "bigaussian2d") return Problem::bigaussian_2d;
  if (name == "discontinuous2d") return Problem::discontinuous_2d;
  throw InvalidArgument("unknown problem '" + name +
                        "' (expected bkw2d, bkw3d, bigaussian2d, discontinuous2d)");
}

double bkw_2d(double t, const std::array<double, 3>& v) {
  detail::require(t >= 0.0, "bkw_2d: time must be non-negative");
  const double s = 1.0 - std::exp(-t / 8.0) / 2.0;
  const double r2 = v[0] * v[0] + v[1] * v[1];
  return std::exp(-r2 / (2.0 * s)) / (2.0 * std::numbers::pi * s) *
         ((2.0 * s - 1.0) / s + (1.0 - s) / (2.0 * s * s) * r2);
}

double bkw_3d(double t, const std::array<double, 3>& v) {
  detail::require(t >= 0.0, "bkw_3d: time must be non-negative");
  const double s = 1.0 - 2.0 * std::exp(-t / 6.0) / 5.0;
  const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  return std::pow(2.0 * std::numbers::pi * s, -1.5) * std::exp(-r2 / (2.0 * s)) *
         ((5.0 * s - 3.0) / (2.0 * s) + (1.0 - s) / (2.0 * s * s) * r2);
}

double bigaussian_2d(const std::array<double, 3>& v) {
  const double a = (v[0] - 2.0) * (v[0] - 2.0) + v[1] * v[1];
  const double b = (v[0] + 2.0) * (v[0] + 2.0) + v[1] * v[1];
  return (std::exp(-a / 2.0) + std::exp(-b / 2.0)) / (4.0 * std::numbers::pi);
}

DiscontinuousParams discontinuous_parameters() {
  // mass: (rho1 + rho2)/2 = 1; energy: (rho1 T1 + rho2 T2)/2 = 1;
  // momentum: rho1 sqrt(T1) = rho2 sqrt(T2). With rho1 = 6/5 these give
  // rho2 = 4/5, T2 = (rho1/rho2)^2 T1 = 9/4 T1, and 3 T1 = 2.
  return {6.0 / 5.0, 4.0 / 5.0, 2.0 / 3.0, 3.0 / 2.0};
}

double discontinuous_2d(const std::array<double, 3>& v) {
  static const DiscontinuousParams p = discontinuous_parameters();
  const double r2 = v[0] * v[0] + v[1] * v[1];
  const double right =
      p.rho_1 / (2.0 * std::numbers::pi * p.temperature_1) *
      std::exp(-r2 / (2.0 * p.temperature_1));
  const double left =
      p.rho_2 / (2.0 * std::numbers::pi * p.temperature_2) *
      std::exp(-r2 / (2.0 * p.temperature_2));
  if (v[0] > 0.0) return right;
  if (v[0] < 0.0) return left;
  return 0.5 * (left + right);
}

double initial_density(Problem problem, const std::array<double, 3>& v) {
  switch (problem) {
    case Problem::bkw_2d:
      return bkw_2d(0.0, v);
    case Problem::bkw_3d:
      return bkw_3d(0.0, v);
    case Problem::bigaussian_2d:
      return bigaussian_2d(v);
    case Problem::discontinuous_2d:
      return discontinuous_2d(v);
  }
  return 0.0;
}

double exact_density(Problem problem, double t, const std::array<double, 3>& v) {
  if (problem == Problem::bkw_2d) return bkw_2d(t, v);
  if (problem == Problem::bkw_3d) return bkw_3d(t, v);
  detail::require(t == 0.0, "exact_density: no closed-form solution for t > 0");
  return initial_density(problem, v);
}

InitMode default_init_mode(Method method) {
  return method_aliased(method) && method_filter(method) != FilterKind::none
             ? InitMode::interpolation
             : InitMode::projection;
}

namespace {

/// Mollified point evaluation (phi_eps * f)(r) with a truncated, quadrature-
/// normalized Gaussian; positive weights keep the result non-negative.
class Mollifier {
 public:
  Mollifier(double width, int dim) : dim_(dim) {
    const int nodes_per_axis = 24;
    const GaussLegendre rule =
        GaussLegendre(nodes_per_axis).mapped(-6.0 * width, 6.0 * width);
    nodes_ = rule.nodes;
    weights_ = rule.weights;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      weights_[i] *= std::exp(-nodes_[i] * nodes_[i] / (2.0 * width * width));
    // normalize so a constant density stays exactly constant
    double sum = 0.0;
    for (double w : weights_) sum += w;
    for (double& w : weights_) w /= sum;
  }

  template <class F>
  double apply(F&& f, const std::array<double, 3>& r) const {
    const std::size_t count = nodes_.size();
    double out = 0.0;
    if (dim_ == 2) {
      for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
          out += weights_[i] * weights_[j] *
                 f({r[0] - nodes_[i], r[1] - nodes_[j], 0.0});
    } else {
      for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
          for (std::size_t k = 0; k < count; ++k)
            out += weights_[i] * weights_[j] * weights_[k] *
                   f({r[0] - nodes_[i], r[1] - nodes_[j], r[2] - nodes_[k]});
    }
    return out;
  }

 private:
  int dim_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace

std::vector<double> interpolation_samples(Problem problem, const Grid& grid,
                                          double mollifier_width) {
  detail::require(problem_dim(problem) == grid.dim(),
                  "interpolation_samples: problem/grid dimension mismatch");
  const std::size_t count = grid.size();
  std::vector<double> samples(count);

  if (problem_smooth(problem)) {
    for (std::size_t i = 0; i < count; ++i)
      samples[i] = initial_density(problem, grid.node_at(i));
    return samples;
  }

  const double width = mollifier_width > 0.0 ? mollifier_width : grid.spacing();
  detail::require(width > 0.0,
                  "interpolation_samples: discontinuous data needs a positive "
                  "mollifier width");
  const Mollifier mollifier(width, grid.dim());
  const auto f = [problem](const std::array<double, 3>& v) {
    return initial_density(problem, v);
  };
#pragma omp parallel for num_threads(max_threads()) schedule(static)
  for (std::size_t i = 0; i < count; ++i)
    samples[i] = mollifier.apply(f, grid.node_at(i));
  return samples;
}

SpectralState initialize(Problem problem, const Grid& grid, InitMode mode,
                         double mollifier_width) {
  detail::require(problem_dim(problem) == grid.dim(),
                  "initialize: problem/grid dimension mismatch");
  if (mode == InitMode::interpolation) {
    const std::vector<double> samples =
        interpolation_samples(problem, grid, mollifier_width);
    return forward_dft(grid, samples);
  }

  // Projection: coefficients of the density restricted to the box, by
  // rectangle-rule quadrature on a 4x finer grid, truncated to K.
  const int oversample = 4;
  const int fine_modes = oversample * grid.modes();
  const double T = grid.box();
  const double fine_h = 2.0 * T / fine_modes;
  const int d = grid.dim();

  std::size_t fine_count = 1;
  for (int i = 0; i < d; ++i) fine_count *= static_cast<std::size_t>(fine_modes);
  std::vector<Cplx> fine(fine_count);
  // fine nodes at fine_h * (j - fine_modes/2), j = 0..fine_modes-1
  const auto fine_node = [&](int j) { return fine_h * (j - fine_modes / 2); };
  if (d == 2) {
    std::size_t idx = 0;
    for (int a = 0; a < fine_modes; ++a)
      for (int b = 0; b < fine_modes; ++b, ++idx)
        fine[idx] = initial_density(problem, {fine_node(a), fine_node(b), 0.0});
  } else {
    std::size_t idx = 0;
    for (int a = 0; a < fine_modes; ++a)
      for (int b = 0; b < fine_modes; ++b)
        for (int c = 0; c < fine_modes; ++c, ++idx)
          fine[idx] =
              initial_density(problem, {fine_node(a), fine_node(b), fine_node(c)});
  }

  // DFT with the fine grid's symmetric indexing; mode k of the fine grid
  // equals (2T)^{-d} integral f E_{-k} by the rectangle rule.
  std::vector<Cplx> work(fine_count);
  {
    // reorder from "offset" layout (j) to transform layout u = j - F/2 mod F
    // F even here, so handle explicitly rather than reusing the odd-N helper.
    const int F = fine_modes;
    if (d == 2) {
      for (int a = 0; a < F; ++a)
        for (int b = 0; b < F; ++b) {
          const int ua = (a - F / 2 + F) % F;
          const int ub = (b - F / 2 + F) % F;
          work[static_cast<std::size_t>(ua) * F + ub] =
              fine[static_cast<std::size_t>(a) * F + b];
        }
    } else {
      for (int a = 0; a < F; ++a)
        for (int b = 0; b < F; ++b)
          for (int c = 0; c < F; ++c) {
            const int ua = (a - F / 2 + F) % F;
            const int ub = (b - F / 2 + F) % F;
            const int uc = (c - F / 2 + F) % F;
            work[(static_cast<std::size_t>(ua) * F + ub) * F + uc] =
                fine[(static_cast<std::size_t>(a) * F + b) * F + c];
          }
    }
    fft::dft_inplace(d, F, -1, work.data());
    const double scale = 1.0 / static_cast<double>(fine_count);
    for (auto& v : work) v *= scale;
  }

  const int n = grid.half_width();
  const int N = grid.modes();
  const int F = fine_modes;
  SpectralState state(grid);
  std::array<int, 3> k{0, 0, 0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    k = grid.mode_at(i);
    std::size_t src = 0;
    for (int c = 0; c < d; ++c) src = src * F + static_cast<std::size_t>((k[c] + F) % F);
    state.modes[i] = work[src];
  }
  (void)n;
  (void)N;
  state.symmetrize();
  return state;
}

}  // namespace efm
