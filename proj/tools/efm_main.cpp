// Distributed under the MIT License.
// See LICENSE.txt for details.
//
// Command-line front end: run configured simulations, produce convergence
// tables, run the small-grid verification suite, and populate the kernel
// cache. Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 verification failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "config_io.hpp"
#include "efm/io.hpp"
#include "efm/verification.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  std::string s = buf;
  for (char& c : s)
    if (c == '.') c = 'p';
  return s;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw efm::InvalidArgument("expected a comma-separated int list");
  return out;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::vector<std::string>& overrides, int threads, long seed) {
  efm::SimulationConfig config =
      efm::tool::load_config(config_path, overrides);
  if (threads > 0) config.threads = threads;
  if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);

  const efm::SimulationResult result = efm::run_simulation(config);

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  efm::tool::write_diagnostics_csv(dir / "diagnostics.csv", result.records);
  for (const auto& slice : result.slices)
    efm::tool::write_slice_csv(
        dir / ("slice_t" + time_tag(slice.time) + ".csv"), slice);
  for (const auto& field : result.fields)
    efm::tool::write_field_csv(
        dir / ("field_t" + time_tag(field.time) + ".csv"), result.grid, field);
  {
    std::ofstream out(dir / "summary.json");
    out << efm::tool::summary_json(config, result).dump(2) << "\n";
  }
  std::cout << "run: " << efm::problem_name(config.problem) << " "
            << efm::method_name(config.method) << " N=" << config.modes
            << " t_end=" << config.t_end << " -> " << out_dir << " ("
            << result.wall_seconds << " s)\n";
  return kExitOk;
}

int cmd_convergence(const std::string& config_path, const std::string& out_dir,
                    const std::vector<std::string>& overrides,
                    const std::string& n_list, const std::string& m_list,
                    int threads) {
  efm::SimulationConfig base = efm::tool::load_config(config_path, overrides);
  if (threads > 0) base.threads = threads;
  if (!efm::problem_has_exact(base.problem))
    throw efm::InvalidArgument(
        "convergence: the configured problem has no exact solution");

  const std::vector<int> mode_counts = parse_int_list(n_list);
  const std::vector<int> angular_counts =
      m_list.empty() ? std::vector<int>{base.angular_nodes} : parse_int_list(m_list);

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  efm::CsvWriter csv(dir / "convergence.csv",
                     {"problem", "method", "N", "M", "l1", "l1_rate", "l2", "l2_rate",
                      "linf", "linf_rate"});
  nlohmann::json report = nlohmann::json::array();

  for (int m : angular_counts) {
    std::vector<double> l1;
    std::vector<double> l2;
    std::vector<double> linf;
    for (std::size_t i = 0; i < mode_counts.size(); ++i) {
      efm::SimulationConfig config = base;
      config.modes = mode_counts[i];
      config.angular_nodes = m;
      const efm::SimulationResult result = efm::run_simulation(config);
      const efm::DiagnosticsRecord& last = result.records.back();
      l1.push_back(last.l1_error);
      l2.push_back(last.l2_error);
      linf.push_back(last.linf_error);

      const auto rate = [&](const std::vector<double>& e) {
        return e.size() > 1 ? std::log2(e[e.size() - 2] / e.back())
                            : std::numeric_limits<double>::quiet_NaN();
      };
      csv.row({efm::problem_name(config.problem), efm::method_name(config.method),
               std::to_string(config.modes), std::to_string(m),
               efm::format_sci(l1.back()), efm::format_sci(rate(l1)),
               efm::format_sci(l2.back()), efm::format_sci(rate(l2)),
               efm::format_sci(linf.back()), efm::format_sci(rate(linf))});
      report.push_back({{"N", config.modes},
                        {"M", m},
                        {"l1", l1.back()},
                        {"l2", l2.back()},
                        {"linf", linf.back()},
                        {"wall_seconds", result.wall_seconds}});
      std::cout << "N=" << config.modes << " M=" << m << "  l1=" << l1.back()
                << "  l2=" << l2.back() << "  linf=" << linf.back() << "\n";
    }
  }
  std::ofstream out(dir / "convergence.json");
  out << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(long seed, const std::string& out_dir, bool inject_fault) {
  efm::VerifyOptions options;
  if (seed >= 0) options.seed = static_cast<std::uint64_t>(seed);
  options.inject_fault = inject_fault;

  const std::vector<efm::CheckResult> results = efm::run_verification(options);
  nlohmann::json report = nlohmann::json::array();
  for (const auto& r : results) {
    std::printf("[%s] %-40s measured=% .3e threshold=% .3e  %s\n",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured, r.threshold,
                r.note.c_str());
    report.push_back({{"name", r.name},
                      {"pass", r.pass},
                      {"measured", r.measured},
                      {"threshold", r.threshold},
                      {"note", r.note}});
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(std::filesystem::path(out_dir) / "verify.json");
    out << report.dump(2) << "\n";
  }
  const bool ok = efm::all_passed(results);
  std::printf("%zu checks, %s\n", results.size(), ok ? "all passed" : "FAILURES");
  return ok ? kExitOk : kExitVerification;
}

int cmd_kernel(const std::string& config_path, const std::vector<std::string>& overrides,
               const std::string& n_list, const std::string& m_list, int threads) {
  efm::SimulationConfig base = efm::tool::load_config(config_path, overrides);
  if (threads > 0) base.threads = threads;
  efm::set_max_threads(base.threads);
  if (base.cache_dir.empty())
    throw efm::InvalidArgument(
        "kernel: no cache directory configured (set cache_dir or EFM_KERNEL_CACHE)");

  const std::vector<int> mode_counts =
      n_list.empty() ? std::vector<int>{base.modes} : parse_int_list(n_list);
  const std::vector<int> angular_counts =
      m_list.empty() ? std::vector<int>{base.angular_nodes} : parse_int_list(m_list);

  for (int n : mode_counts) {
    for (int m : angular_counts) {
      efm::SimulationConfig config = base;
      config.modes = n;
      config.angular_nodes = m;
      const efm::Grid grid = efm::make_grid(config);
      efm::CacheStats stats;
      efm::KernelSpec spec =
          efm::KernelSpec::for_grid(grid, config.angular_nodes, config.radial_nodes);
      if (grid.dim() == 2)
        efm::load_or_build_2d(spec, config.cache_dir, &stats);
      else
        efm::load_or_build_3d(spec, config.cache_dir, &stats);
      std::cout << (stats.hit ? "cache hit " : (stats.rebuilt ? "rebuilt   " : "built     "))
                << stats.path << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "efm: entropic Fourier spectral solver for the space-homogeneous "
      "Boltzmann collision operator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  int threads = 0;
  long seed = -1;
  std::string n_list;
  std::string m_list;
  bool inject_fault = false;

  CLI::App* run = app.add_subcommand("run", "run one configured simulation");
  run->add_option("--config", config_path, "JSON run configuration")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--override", overrides, "KEY=VALUE config overrides");
  run->add_option("--threads", threads, "worker threads (default: config)");
  run->add_option("--seed", seed, "seed recorded in the summary");

  CLI::App* conv = app.add_subcommand(
      "convergence", "error/rate table over a resolution ladder");
  conv->add_option("--config", config_path, "JSON run configuration")->required();
  conv->add_option("--out", out_dir, "output directory");
  conv->add_option("--override", overrides, "KEY=VALUE config overrides");
  conv->add_option("--N", n_list, "comma-separated resolutions")->required();
  conv->add_option("--M", m_list, "comma-separated angular node counts");
  conv->add_option("--threads", threads, "worker threads");

  CLI::App* verify =
      app.add_subcommand("verify", "run the small-grid verification suite");
  verify->add_option("--seed", seed, "random seed for the generated states");
  verify->add_option("--out", out_dir, "directory for verify.json (optional)");
  verify->add_flag("--inject-fault", inject_fault,
                   "tamper with one kernel mode; the suite must then fail");

  CLI::App* kernel = app.add_subcommand("kernel", "build and persist kernels");
  kernel->add_option("--config", config_path, "JSON run configuration")->required();
  kernel->add_option("--override", overrides, "KEY=VALUE config overrides");
  kernel->add_option("--N", n_list, "comma-separated resolutions");
  kernel->add_option("--M", m_list, "comma-separated angular node counts");
  kernel->add_option("--threads", threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, overrides, threads, seed);
    if (conv->parsed())
      return cmd_convergence(config_path, out_dir, overrides, n_list, m_list, threads);
    if (verify->parsed()) {
      return cmd_verify(seed, verify->count("--out") ? out_dir : "", inject_fault);
    }
    if (kernel->parsed())
      return cmd_kernel(config_path, overrides, n_list, m_list, threads);
  } catch (const efm::InvalidArgument& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const efm::NumericalError& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return kExitNumerical;
  } catch (const efm::IoError& err) {
    std::cerr << "io error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
