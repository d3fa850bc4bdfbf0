// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "efm/simulation.hpp"

namespace efm::tool {

/// Parse and schema-check a run configuration. Unknown keys and type
/// mismatches are config errors (actionable messages, exit code 2).
SimulationConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SimulationConfig& config);

/// Apply KEY=VALUE overrides on the raw JSON before parsing; VALUE is parsed
/// as JSON when possible, otherwise taken as a string.
void apply_overrides(nlohmann::json& j, const std::vector<std::string>& overrides);

/// Load a config file, apply overrides and the cache-dir environment default.
SimulationConfig load_config(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides);

/// CSV/JSON artifact writers for the run subcommand.
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& records);
void write_slice_csv(const std::filesystem::path& path, const SliceData& slice);
void write_field_csv(const std::filesystem::path& path, const Grid& grid,
                     const FieldDump& field);
nlohmann::json summary_json(const SimulationConfig& config,
                            const SimulationResult& result);

/// Default kernel cache directory: $EFM_KERNEL_CACHE if set, else empty
/// (cache disabled).
std::string default_cache_dir();

}  // namespace efm::tool
