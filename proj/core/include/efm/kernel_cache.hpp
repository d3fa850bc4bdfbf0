// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <filesystem>
#include <string>

#include "efm/kernel.hpp"

namespace efm {

/// What load_or_build did, for logging and tests.
struct CacheStats {
  bool hit = false;       // loaded from a valid cache file
  bool rebuilt = false;   // file existed but was stale/corrupt
  std::string path;
  std::string message;
};

/// Canonical cache file name for a spec, keyed by (d, N, R, T, model, M/M_r).
std::string cache_file_name(const KernelSpec& spec);

/// Load the kernel from `dir` if a matching, checksum-clean file exists;
/// otherwise build it and persist it (write-temp-then-rename). A corrupted
/// or mismatched file is rebuilt, never fatal. An empty `dir` disables
/// caching entirely. Throws IoError only when a fresh write fails.
KernelFactors2D load_or_build_2d(const KernelSpec& spec,
                                 const std::filesystem::path& dir,
                                 CacheStats* stats = nullptr);
KernelTable3D load_or_build_3d(const KernelSpec& spec,
                               const std::filesystem::path& dir,
                               CacheStats* stats = nullptr);

}  // namespace efm
