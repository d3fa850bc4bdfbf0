// Distributed under the MIT License.
// See LICENSE.txt for details.
//
// End-to-end checks of the command-line tool: exit codes, artifact layout,
// and byte-level determinism. Each case shells out to the real binary.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

const char* tool_path() { return EFM_TOOL_PATH; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("efm_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static inline int counter = 0;
};

int run_tool(const std::string& args) {
  const std::string cmd = std::string(tool_path()) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path write_config(const TempDir& dir, const nlohmann::json& j) {
  const fs::path path = dir.path / "config.json";
  std::ofstream out(path);
  out << j.dump(2);
  return path;
}

nlohmann::json tiny_config() {
  return {{"problem", "bkw2d"}, {"method", "efm"}, {"N", 16},
          {"R", 6.0},           {"dt", 0.01},      {"t_end", 0.0}};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config errors exit with code 2") {
  TempDir dir;
  SUBCASE("unknown key") {
    auto j = tiny_config();
    j["typo_key"] = 1;
    const fs::path cfg = write_config(dir, j);
    CHECK(run_tool("run --config " + cfg.string() + " --out " +
                   (dir.path / "out").string()) == 2);
  }
  SUBCASE("invalid method") {
    auto j = tiny_config();
    j["method"] = "spectral-magic";
    const fs::path cfg = write_config(dir, j);
    CHECK(run_tool("run --config " + cfg.string() + " --out " +
                   (dir.path / "out").string()) == 2);
  }
  SUBCASE("missing file") {
    CHECK(run_tool("run --config /nonexistent.json --out " +
                   (dir.path / "out").string()) == 2);
  }
  SUBCASE("convergence needs an exact solution") {
    auto j = tiny_config();
    j["problem"] = "bigaussian2d";
    const fs::path cfg = write_config(dir, j);
    CHECK(run_tool("convergence --config " + cfg.string() + " --N 8,16 --out " +
                   (dir.path / "out").string()) == 2);
  }
}

TEST_CASE("a zero-length run writes a single-row diagnostics file") {
  TempDir dir;
  const fs::path cfg = write_config(dir, tiny_config());
  const fs::path out = dir.path / "out";
  REQUIRE(run_tool("run --config " + cfg.string() + " --out " + out.string()) == 0);

  std::ifstream csv(out / "diagnostics.csv");
  REQUIRE(csv.good());
  std::string line;
  int rows = 0;
  std::string header;
  while (std::getline(csv, line)) {
    if (rows == 0) header = line;
    ++rows;
  }
  CHECK(rows == 2);  // header + one record
  CHECK(header.find("positivity_error") != std::string::npos);
  CHECK(fs::exists(out / "summary.json"));
}

TEST_CASE("identical configurations produce identical bytes") {
  TempDir dir;
  auto j = tiny_config();
  j["t_end"] = 0.05;
  const fs::path cfg = write_config(dir, j);
  const fs::path out1 = dir.path / "a";
  const fs::path out2 = dir.path / "b";
  REQUIRE(run_tool("run --config " + cfg.string() + " --out " + out1.string()) == 0);
  REQUIRE(run_tool("run --config " + cfg.string() + " --out " + out2.string()) == 0);
  CHECK(slurp(out1 / "diagnostics.csv") == slurp(out2 / "diagnostics.csv"));
}

TEST_CASE("overrides reach the configuration and the summary echo") {
  TempDir dir;
  const fs::path cfg = write_config(dir, tiny_config());
  const fs::path out = dir.path / "out";
  REQUIRE(run_tool("run --config " + cfg.string() + " --override N=8" +
                   " --override method=fcm --out " + out.string()) == 0);
  const nlohmann::json summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(summary["config"]["N"] == 8);
  CHECK(summary["config"]["method"] == "fcm");
  CHECK(summary["grid"]["modes"] == 7);  // even request reduced internally
}

TEST_CASE("snapshots produce slice files") {
  TempDir dir;
  auto j = tiny_config();
  j["t_end"] = 0.02;
  j["snapshot_times"] = {0.01};
  const fs::path cfg = write_config(dir, j);
  const fs::path out = dir.path / "out";
  REQUIRE(run_tool("run --config " + cfg.string() + " --out " + out.string()) == 0);
  CHECK(fs::exists(out / "slice_t0p01.csv"));
}

TEST_CASE("verify passes clean and fails under fault injection") {
  TempDir dir;
  CHECK(run_tool("verify --seed 7 --out " + (dir.path / "v").string()) == 0);
  CHECK(fs::exists(dir.path / "v" / "verify.json"));
  CHECK(run_tool("verify --seed 7 --inject-fault") == 4);
}

TEST_CASE("kernel subcommand populates and reuses the cache") {
  TempDir dir;
  auto j = tiny_config();
  j["cache_dir"] = (dir.path / "cache").string();
  const fs::path cfg = write_config(dir, j);
  REQUIRE(run_tool("kernel --config " + cfg.string() + " --N 8,16 --M 2,8") == 0);
  int files = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir.path / "cache"))
    ++files;
  CHECK(files == 4);
  // idempotent second pass
  CHECK(run_tool("kernel --config " + cfg.string() + " --N 8,16 --M 2,8") == 0);
}

TEST_CASE("a cached kernel is picked up by a run") {
  TempDir dir;
  auto j = tiny_config();
  j["cache_dir"] = (dir.path / "cache").string();
  const fs::path cfg = write_config(dir, j);
  const fs::path out1 = dir.path / "r1";
  const fs::path out2 = dir.path / "r2";
  REQUIRE(run_tool("run --config " + cfg.string() + " --out " + out1.string()) == 0);
  REQUIRE(run_tool("run --config " + cfg.string() + " --out " + out2.string()) == 0);
  const nlohmann::json s1 = nlohmann::json::parse(slurp(out1 / "summary.json"));
  const nlohmann::json s2 = nlohmann::json::parse(slurp(out2 / "summary.json"));
  CHECK(s1["kernel_cache"]["hit"] == false);
  CHECK(s2["kernel_cache"]["hit"] == true);
}
