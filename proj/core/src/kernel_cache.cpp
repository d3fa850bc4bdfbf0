// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/kernel_cache.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace efm {

namespace {

static_assert(std::endian::native == std::endian::little,
              "cache files are little-endian; big-endian hosts are unsupported");

constexpr char kMagic[8] = {'E', 'F', 'M', 'K', 'R', 'N', '0', '1'};

std::uint64_t fnv1a(const unsigned char* data, std::size_t size,
                    std::uint64_t seed = 0xcbf29ce484222325ULL) {
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

nlohmann::json spec_header(const KernelSpec& spec, std::size_t payload_count) {
  nlohmann::json j;
  j["dim"] = spec.dim;
  j["model"] = spec.model == MoleculeModel::maxwell_2d ? "maxwell-2d" : "maxwell-3d";
  j["N"] = spec.modes;
  j["R"] = spec.support_radius;
  j["T"] = spec.box_half_width;
  if (spec.dim == 2)
    j["M"] = spec.angular_nodes;
  else
    j["Mr"] = spec.radial_nodes;
  j["count"] = payload_count;
  return j;
}

bool header_matches(const nlohmann::json& j, const KernelSpec& spec) {
  try {
    if (j.at("dim").get<int>() != spec.dim) return false;
    if (j.at("N").get<int>() != spec.modes) return false;
    if (j.at("R").get<double>() != spec.support_radius) return false;
    if (j.at("T").get<double>() != spec.box_half_width) return false;
    const std::string model = j.at("model").get<std::string>();
    if (model != (spec.model == MoleculeModel::maxwell_2d ? "maxwell-2d" : "maxwell-3d"))
      return false;
    if (spec.dim == 2 && j.at("M").get<int>() != spec.angular_nodes) return false;
    if (spec.dim == 3 && j.at("Mr").get<int>() != spec.radial_nodes) return false;
  } catch (const nlohmann::json::exception&) {
    return false;
  }
  return true;
}

void write_cache_file(const std::filesystem::path& path, const KernelSpec& spec,
                      const std::vector<double>& payload) {
  std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";

  const std::string header = spec_header(spec, payload.size()).dump();
  const std::uint32_t header_len = static_cast<std::uint32_t>(header.size());

  std::uint64_t checksum = fnv1a(
      reinterpret_cast<const unsigned char*>(header.data()), header.size());
  checksum = fnv1a(reinterpret_cast<const unsigned char*>(payload.data()),
                   payload.size() * sizeof(double), checksum);

  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("kernel cache: cannot open " + tmp.string() + " for writing");
    out.write(kMagic, sizeof(kMagic));
    out.write(reinterpret_cast<const char*>(&header_len), sizeof(header_len));
    out.write(header.data(), header.size());
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(&checksum), sizeof(checksum));
    if (!out) throw IoError("kernel cache: short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

/// Returns the payload if the file is present, well-formed, checksum-clean,
/// and matches the spec; otherwise nullopt with a reason in `why`.
std::optional<std::vector<double>> read_cache_file(const std::filesystem::path& path,
                                                   const KernelSpec& spec,
                                                   std::string& why) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    why = "miss";
    return std::nullopt;
  }
  char magic[8];
  std::uint32_t header_len = 0;
  in.read(magic, sizeof(magic));
  in.read(reinterpret_cast<char*>(&header_len), sizeof(header_len));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0 || header_len > 1 << 20) {
    why = "bad magic or header length";
    return std::nullopt;
  }
  std::string header(header_len, '\0');
  in.read(header.data(), header_len);
  if (!in) {
    why = "truncated header";
    return std::nullopt;
  }
  nlohmann::json j = nlohmann::json::parse(header, nullptr, false);
  if (j.is_discarded() || !header_matches(j, spec)) {
    why = "header mismatch";
    return std::nullopt;
  }
  std::size_t count = 0;
  try {
    count = j.at("count").get<std::size_t>();
  } catch (const nlohmann::json::exception&) {
    why = "header missing payload count";
    return std::nullopt;
  }
  std::vector<double> payload(count);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  std::uint64_t stored = 0;
  in.read(reinterpret_cast<char*>(&stored), sizeof(stored));
  if (!in) {
    why = "truncated payload";
    return std::nullopt;
  }
  std::uint64_t checksum = fnv1a(
      reinterpret_cast<const unsigned char*>(header.data()), header.size());
  checksum = fnv1a(reinterpret_cast<const unsigned char*>(payload.data()),
                   payload.size() * sizeof(double), checksum);
  if (checksum != stored) {
    why = "checksum mismatch";
    return std::nullopt;
  }
  return payload;
}

}  // namespace

std::string cache_file_name(const KernelSpec& spec) {
  std::ostringstream name;
  name.precision(17);
  name << (spec.dim == 2 ? "k2d" : "k3d") << "_N" << spec.modes << "_R"
       << spec.support_radius << "_T" << spec.box_half_width;
  if (spec.dim == 2)
    name << "_M" << spec.angular_nodes;
  else
    name << "_Mr" << spec.radial_nodes;
  name << ".efmk";
  return name.str();
}

KernelFactors2D load_or_build_2d(const KernelSpec& spec,
                                 const std::filesystem::path& dir, CacheStats* stats) {
  spec.validate();
  CacheStats local;
  if (dir.empty()) {
    if (stats) *stats = local;
    return build_kernel_2d(spec);
  }
  const std::filesystem::path path = dir / cache_file_name(spec);
  local.path = path.string();

  std::string why;
  if (auto payload = read_cache_file(path, spec, why)) {
    const std::size_t count =
        static_cast<std::size_t>(spec.modes) * spec.modes * spec.angular_nodes;
    if (payload->size() == 2 * count) {
      KernelFactors2D out;
      out.modes = spec.modes;
      out.angular_nodes = spec.angular_nodes;
      out.term_weight = kernel_2d_term_weight(spec.angular_nodes);
      out.beta.assign(payload->begin(), payload->begin() + count);
      out.gamma.assign(payload->begin() + count, payload->end());
      local.hit = true;
      if (stats) *stats = local;
      return out;
    }
    why = "payload size mismatch";
  }
  local.rebuilt = std::filesystem::exists(path);
  local.message = why;

  KernelFactors2D built = build_kernel_2d(spec);
  std::vector<double> payload;
  payload.reserve(built.beta.size() + built.gamma.size());
  payload.insert(payload.end(), built.beta.begin(), built.beta.end());
  payload.insert(payload.end(), built.gamma.begin(), built.gamma.end());
  write_cache_file(path, spec, payload);
  if (stats) *stats = local;
  return built;
}

KernelTable3D load_or_build_3d(const KernelSpec& spec,
                               const std::filesystem::path& dir, CacheStats* stats) {
  spec.validate();
  CacheStats local;
  if (dir.empty()) {
    if (stats) *stats = local;
    return build_kernel_3d(spec);
  }
  const std::filesystem::path path = dir / cache_file_name(spec);
  local.path = path.string();

  const int W = 3 * (spec.modes - 1) * (spec.modes - 1) + 1;
  std::string why;
  if (auto payload = read_cache_file(path, spec, why)) {
    if (payload->size() == static_cast<std::size_t>(W) * W) {
      KernelTable3D out;
      out.modes = spec.modes;
      out.max_sq = W - 1;
      out.support_radius = spec.support_radius;
      out.box_half_width = spec.box_half_width;
      out.phi = std::move(*payload);
      local.hit = true;
      if (stats) *stats = local;
      return out;
    }
    why = "payload size mismatch";
  }
  local.rebuilt = std::filesystem::exists(path);
  local.message = why;

  KernelTable3D built = build_kernel_3d(spec);
  write_cache_file(path, spec, built.phi);
  if (stats) *stats = local;
  return built;
}

}  // namespace efm
