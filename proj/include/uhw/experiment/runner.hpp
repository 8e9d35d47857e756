#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "uhw/core/rng.hpp"
#include "uhw/experiment/config.hpp"

namespace uhw::experiment {

using uhw::derive_seed;

inline constexpr const char* kCodeVersion = "uhw 0.1.0";
/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "UHW_OUT_DIR";

struct RunOptions {
  std::optional<std::uint64_t> seed;  ///< overrides parameters.seed
  std::optional<std::filesystem::path> out_dir;
  unsigned workers = 1;
};

/// Output directory used when RunOptions::out_dir is unset: $UHW_OUT_DIR, else ".".
std::filesystem::path default_output_dir();

struct RunRecord {
  ExperimentConfig config;  ///< effective config; parameters.seed holds the master seed
  std::string started_at;   ///< ISO 8601 UTC
  std::string finished_at;
  std::string code_version = kCodeVersion;
  std::vector<std::filesystem::path> result_files;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
  std::filesystem::path sidecar;
};

void to_json(nlohmann::json& j, const RunRecord& r);

/// Executes the configured experiment. Results go to
/// <out_dir>/<output_path>.{csv,json} (output_path defaults to the
/// subcommand name) and the record to <out_dir>/<output_path>.run.json.
/// Result bytes depend only on the effective config, never on `workers`.
/// On failure every file written so far is removed and the exception is
/// rethrown.
RunRecord run(ExperimentConfig config, const RunOptions& options = {});

/// {"status": "error", "kind": ..., "message": ..., "keys": [...]}.
nlohmann::json error_json(const std::exception& e);

}  // namespace uhw::experiment
