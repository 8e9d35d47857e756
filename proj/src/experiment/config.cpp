#include "uhw/experiment/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>

#include "uhw/core/error.hpp"

namespace uhw::experiment {

namespace {

enum class Kind { count, positive_count, real, alpha, flag, text, real_list, count_list };

struct KeySpec {
  Kind kind;
  bool required;
  std::vector<std::string> choices;  // Kind::text only; empty means free text
};

using Schema = std::map<std::string, KeySpec>;

Schema schema_for(Subcommand cmd) {
  Schema s{{"seed", {Kind::count, false, {}}}, {"output_path", {Kind::text, false, {}}}};
  auto req = [&](const std::string& k, Kind kind) { s[k] = {kind, true, {}}; };
  auto opt = [&](const std::string& k, Kind kind) { s[k] = {kind, false, {}}; };
  switch (cmd) {
    case Subcommand::sample:
      req("alpha", Kind::alpha);
      req("trials", Kind::positive_count);
      opt("standardized", Kind::flag);
      opt("p_grid", Kind::real_list);
      break;
    case Subcommand::moments:
      req("alpha", Kind::alpha);
      req("p_grid", Kind::real_list);
      req("trials", Kind::positive_count);
      opt("n", Kind::positive_count);
      opt("standardized", Kind::flag);
      break;
    case Subcommand::tails:
      s["statistic"] = {Kind::text, true, {"constant", "single_matrix", "uniform"}};
      req("thresholds", Kind::real_list);
      req("trials", Kind::positive_count);
      opt("value", Kind::real);
      opt("alpha", Kind::alpha);
      opt("n", Kind::positive_count);
      opt("m", Kind::positive_count);
      opt("s", Kind::positive_count);
      opt("members", Kind::positive_count);
      opt("standardized", Kind::flag);
      opt("min_survival", Kind::real);
      opt("matrix_csv", Kind::text);
      break;
    case Subcommand::chaos:
      s["check"] = {Kind::text, true, {"linear", "chaos", "weak_strong", "prop31", "sup_norm"}};
      req("alpha", Kind::alpha);
      req("p_grid", Kind::real_list);
      req("trials", Kind::positive_count);
      req("n", Kind::positive_count);
      opt("m", Kind::positive_count);
      opt("s", Kind::positive_count);
      opt("members", Kind::positive_count);
      opt("standardized", Kind::flag);
      s["point_set"] = {Kind::text, false, {"singleton", "basis", "random"}};
      break;
    case Subcommand::decouple:
      req("alpha", Kind::alpha);
      req("n", Kind::positive_count);
      req("members", Kind::positive_count);
      req("trials", Kind::positive_count);
      req("c_grid", Kind::real_list);
      s["f"] = {Kind::text, false, {"abs", "square", "power"}};
      opt("f_exponent", Kind::real);
      opt("standardized", Kind::flag);
      break;
    case Subcommand::gamma:
      req("alpha", Kind::alpha);
      req("n", Kind::positive_count);
      req("m", Kind::positive_count);
      req("s", Kind::positive_count);
      req("members", Kind::positive_count);
      break;
    case Subcommand::rip:
      req("alpha", Kind::alpha);
      req("n", Kind::positive_count);
      req("m_grid", Kind::count_list);
      req("s", Kind::positive_count);
      req("trials", Kind::positive_count);
      opt("delta_target", Kind::real);
      break;
  }
  return s;
}

bool is_count(const nlohmann::json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); }

bool well_formed(const nlohmann::json& v, const KeySpec& spec) {
  switch (spec.kind) {
    case Kind::count:
      return is_count(v);
    case Kind::positive_count:
      return is_count(v) && v.get<unsigned long long>() > 0;
    case Kind::real:
      return v.is_number();
    case Kind::alpha:
      return v.is_number() && v.get<double>() > 0.0 && v.get<double>() <= 1.0;
    case Kind::flag:
      return v.is_boolean();
    case Kind::text:
      return v.is_string() &&
             (spec.choices.empty() ||
              std::find(spec.choices.begin(), spec.choices.end(), v.get<std::string>()) != spec.choices.end());
    case Kind::real_list:
      return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const auto& e) { return e.is_number(); });
    case Kind::count_list:
      return v.is_array() && !v.empty() &&
             std::all_of(v.begin(), v.end(), [](const auto& e) { return is_count(e) && e.template get<unsigned long long>() > 0; });
  }
  return false;
}

std::string join(const std::vector<std::string>& keys) {
  std::string out;
  for (const auto& k : keys) out += (out.empty() ? "" : ", ") + k;
  return out;
}

}  // namespace

std::string to_string(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::sample:
      return "sample";
    case Subcommand::moments:
      return "moments";
    case Subcommand::tails:
      return "tails";
    case Subcommand::chaos:
      return "chaos";
    case Subcommand::decouple:
      return "decouple";
    case Subcommand::gamma:
      return "gamma";
    case Subcommand::rip:
      return "rip";
  }
  return "";
}

const std::vector<Subcommand>& all_subcommands() {
  static const std::vector<Subcommand> all{Subcommand::sample,   Subcommand::moments, Subcommand::tails, Subcommand::chaos,
                                           Subcommand::decouple, Subcommand::gamma,   Subcommand::rip};
  return all;
}

Subcommand subcommand_from_string(const std::string& tag) {
  for (Subcommand cmd : all_subcommands()) {
    if (to_string(cmd) == tag) return cmd;
  }
  throw ConfigError("unknown subcommand '" + tag + "'", {"subcommand"});
}

void validate(const ExperimentConfig& config) {
  if (config.schema_version != kSchemaVersion) {
    throw ConfigError("unsupported schema_version " + std::to_string(config.schema_version), {"schema_version"});
  }
  if (!config.parameters.is_object()) throw ConfigError("parameters must be a JSON object", {"parameters"});
  const Schema schema = schema_for(config.subcommand);
  std::vector<std::string> unknown, missing, invalid;
  for (const auto& [key, value] : config.parameters.items()) {
    const auto it = schema.find(key);
    if (it == schema.end()) {
      unknown.push_back(key);
    } else if (!well_formed(value, it->second)) {
      invalid.push_back(key);
    }
  }
  for (const auto& [key, spec] : schema) {
    if (spec.required && !config.parameters.contains(key)) missing.push_back(key);
  }
  if (unknown.empty() && missing.empty() && invalid.empty()) return;

  std::string what = "invalid " + to_string(config.subcommand) + " config:";
  if (!unknown.empty()) what += " unknown keys [" + join(unknown) + "]";
  if (!missing.empty()) what += " missing keys [" + join(missing) + "]";
  if (!invalid.empty()) what += " malformed keys [" + join(invalid) + "]";
  std::vector<std::string> keys = unknown;
  keys.insert(keys.end(), missing.begin(), missing.end());
  keys.insert(keys.end(), invalid.begin(), invalid.end());
  throw ConfigError(what, keys);
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object", {});
  std::vector<std::string> unknown;
  for (const auto& [key, value] : j.items()) {
    if (key != "schema_version" && key != "subcommand" && key != "parameters") unknown.push_back(key);
  }
  if (!unknown.empty()) throw ConfigError("unknown top-level keys [" + join(unknown) + "]", unknown);
  std::vector<std::string> missing;
  for (const char* key : {"schema_version", "subcommand", "parameters"}) {
    if (!j.contains(key)) missing.emplace_back(key);
  }
  if (!missing.empty()) throw ConfigError("missing top-level keys [" + join(missing) + "]", missing);
  if (!j["schema_version"].is_number_integer()) throw ConfigError("schema_version must be an integer", {"schema_version"});
  if (!j["subcommand"].is_string()) throw ConfigError("subcommand must be a string", {"subcommand"});

  ExperimentConfig config;
  config.schema_version = j["schema_version"].get<int>();
  config.subcommand = subcommand_from_string(j["subcommand"].get<std::string>());
  config.parameters = j["parameters"];
  validate(config);
  return config;
}

nlohmann::json serialize_config(const ExperimentConfig& config) {
  return nlohmann::json{{"schema_version", config.schema_version},
                        {"subcommand", to_string(config.subcommand)},
                        {"parameters", config.parameters}};
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string(), {});
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what(), {});
  }
  if (j.is_object() && j.contains("run_record")) {
    if (!j.contains("config")) throw ConfigError("run record lacks a config snapshot", {"config"});
    return parse_config(j["config"]);
  }
  return parse_config(j);
}

}  // namespace uhw::experiment
