// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "config_io.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "efm/io.hpp"

namespace efm::tool {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "problem",      "method",          "N",
      "R",            "T",               "allow_undersized_box",
      "M",            "Mr",              "dt",
      "t_end",        "output_every",    "init",
      "mollifier_width", "snapshot_times", "dump_fields",
      "cache_dir",    "seed",            "threads"};
  return keys;
}

template <class T>
T get_or(const nlohmann::json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument("config: key '" + key + "' has the wrong type");
  }
}

}  // namespace

SimulationConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config: top level must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (known_keys().count(key) == 0)
      throw InvalidArgument("config: unknown key '" + key + "'");
  }

  SimulationConfig config;
  if (!j.contains("problem")) throw InvalidArgument("config: missing key 'problem'");
  if (!j.contains("method")) throw InvalidArgument("config: missing key 'method'");
  config.problem = problem_from_name(get_or<std::string>(j, "problem", ""));
  config.method = method_from_name(get_or<std::string>(j, "method", ""));
  config.modes = get_or<int>(j, "N", config.modes);
  config.support_radius = get_or<double>(j, "R", config.support_radius);
  if (j.contains("T")) config.box_half_width = get_or<double>(j, "T", 0.0);
  config.allow_undersized_box =
      get_or<bool>(j, "allow_undersized_box", config.allow_undersized_box);
  config.angular_nodes = get_or<int>(j, "M", config.angular_nodes);
  config.radial_nodes = get_or<int>(j, "Mr", config.radial_nodes);
  config.dt = get_or<double>(j, "dt", config.dt);
  config.t_end = get_or<double>(j, "t_end", config.t_end);
  config.output_every = get_or<int>(j, "output_every", config.output_every);
  if (j.contains("init")) {
    const std::string mode = get_or<std::string>(j, "init", "");
    if (mode == "interpolation")
      config.init = InitMode::interpolation;
    else if (mode == "projection")
      config.init = InitMode::projection;
    else if (mode != "default")
      throw InvalidArgument(
          "config: init must be 'interpolation', 'projection', or 'default'");
  }
  if (j.contains("mollifier_width"))
    config.mollifier_width = get_or<double>(j, "mollifier_width", 0.0);
  config.snapshot_times =
      get_or<std::vector<double>>(j, "snapshot_times", config.snapshot_times);
  config.dump_fields = get_or<bool>(j, "dump_fields", config.dump_fields);
  config.cache_dir = get_or<std::string>(j, "cache_dir", config.cache_dir);
  config.seed = get_or<std::uint64_t>(j, "seed", config.seed);
  config.threads = get_or<int>(j, "threads", config.threads);

  config.validate();  // cross-field checks with actionable messages
  return config;
}

nlohmann::json config_to_json(const SimulationConfig& config) {
  nlohmann::json j;
  j["problem"] = problem_name(config.problem);
  j["method"] = method_name(config.method);
  j["N"] = config.modes;
  j["R"] = config.support_radius;
  if (config.box_half_width) j["T"] = *config.box_half_width;
  j["allow_undersized_box"] = config.allow_undersized_box;
  j["M"] = config.angular_nodes;
  j["Mr"] = config.radial_nodes;
  j["dt"] = config.dt;
  j["t_end"] = config.t_end;
  j["output_every"] = config.output_every;
  j["init"] =
      config.init_mode() == InitMode::interpolation ? "interpolation" : "projection";
  if (config.mollifier_width) j["mollifier_width"] = *config.mollifier_width;
  j["snapshot_times"] = config.snapshot_times;
  j["dump_fields"] = config.dump_fields;
  j["cache_dir"] = config.cache_dir;
  j["seed"] = config.seed;
  j["threads"] = config.threads;
  return j;
}

void apply_overrides(nlohmann::json& j, const std::vector<std::string>& overrides) {
  for (const std::string& item : overrides) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("override '" + item + "' is not of the form KEY=VALUE");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;  // fall back to a plain string
    j[key] = parsed;
  }
}

SimulationConfig load_config(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("config: cannot open " + path.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw InvalidArgument("config: " + path.string() + " is not valid JSON");
  apply_overrides(j, overrides);
  if (!j.contains("cache_dir")) {
    const std::string env = default_cache_dir();
    if (!env.empty()) j["cache_dir"] = env;
  }
  return config_from_json(j);
}

std::string default_cache_dir() {
  const char* env = std::getenv("EFM_KERNEL_CACHE");
  return env != nullptr ? env : "";
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& records) {
  CsvWriter csv(path, {"time", "mass", "momentum_1", "momentum_2", "momentum_3",
                       "energy", "entropy", "positivity_error", "min_value",
                       "negative_entropy_terms", "l1_error", "l2_error",
                       "linf_error"});
  for (const auto& r : records)
    csv.row({format_sci(r.time), format_sci(r.mass), format_sci(r.momentum[0]),
             format_sci(r.momentum[1]), format_sci(r.momentum[2]),
             format_sci(r.energy), format_sci(r.entropy),
             format_sci(r.positivity_error), format_sci(r.min_value),
             std::to_string(r.negative_entropy_terms), format_sci(r.l1_error),
             format_sci(r.l2_error), format_sci(r.linf_error)});
}

void write_slice_csv(const std::filesystem::path& path, const SliceData& slice) {
  CsvWriter csv(path, {"v1", "value", "exact"});
  for (std::size_t i = 0; i < slice.coordinate.size(); ++i)
    csv.row({format_sci(slice.coordinate[i]), format_sci(slice.value[i]),
             format_sci(slice.exact[i])});
}

void write_field_csv(const std::filesystem::path& path, const Grid& grid,
                     const FieldDump& field) {
  std::vector<std::string> header = {"v1", "v2"};
  if (grid.dim() == 3) header.push_back("v3");
  header.push_back("value");
  CsvWriter csv(path, header);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const auto node = grid.node_at(i);
    std::vector<std::string> cells = {format_sci(node[0]), format_sci(node[1])};
    if (grid.dim() == 3) cells.push_back(format_sci(node[2]));
    cells.push_back(format_sci(field.values[i]));
    csv.row(cells);
  }
}

nlohmann::json summary_json(const SimulationConfig& config,
                            const SimulationResult& result) {
  nlohmann::json j;
  j["config"] = config_to_json(config);
  j["grid"] = {{"dim", result.grid.dim()},
               {"modes", result.grid.modes()},
               {"requested_modes", result.grid.requested_modes()},
               {"T", result.grid.box()},
               {"R", result.grid.radius()},
               {"h", result.grid.spacing()}};
  j["wall_seconds"] = result.wall_seconds;
  j["kernel_cache"] = {{"hit", result.cache.hit},
                       {"rebuilt", result.cache.rebuilt},
                       {"path", result.cache.path}};
  if (!result.records.empty()) {
    const DiagnosticsRecord& last = result.records.back();
    nlohmann::json rec;
    rec["time"] = last.time;
    rec["mass"] = last.mass;
    rec["energy"] = last.energy;
    rec["entropy"] = last.entropy;
    rec["positivity_error"] = last.positivity_error;
    rec["min_value"] = last.min_value;
    if (std::isfinite(last.l1_error)) {
      rec["l1_error"] = last.l1_error;
      rec["l2_error"] = last.l2_error;
      rec["linf_error"] = last.linf_error;
    }
    j["final"] = rec;
  }
  return j;
}

}  // namespace efm::tool
