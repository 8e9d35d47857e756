#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace uhw::experiment {

enum class Subcommand { sample, moments, tails, chaos, decouple, gamma, rip };

std::string to_string(Subcommand cmd);
/// Throws ConfigError naming "subcommand" for an unknown tag.
Subcommand subcommand_from_string(const std::string& tag);
const std::vector<Subcommand>& all_subcommands();

inline constexpr int kSchemaVersion = 1;

/// A subcommand tag plus a flat JSON object of parameters.
///
/// File layout:
///   { "schema_version": 1, "subcommand": "rip", "parameters": { ... } }
struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  Subcommand subcommand = Subcommand::sample;
  nlohmann::json parameters = nlohmann::json::object();

  bool operator==(const ExperimentConfig&) const = default;
};

/// Checks required keys, rejects unknown keys, and validates types and
/// ranges. Throws ConfigError carrying every offending key.
void validate(const ExperimentConfig& config);

/// Parses and validates. Top-level keys other than schema_version,
/// subcommand, parameters are rejected.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json serialize_config(const ExperimentConfig& config);

/// Reads a config file. A RunRecord sidecar is accepted too; its embedded
/// config snapshot is returned, which makes every record replayable.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace uhw::experiment
