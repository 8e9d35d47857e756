// Command-line front end:
//   uhw <subcommand> --config <path> [--seed N] [--out DIR] [--workers K]
//   uhw plot --csv <path> --kind {tail_overlay,phase_diagram,moment_growth} [--script <path>]
// Prints the run record (or script path) as JSON on stdout. Failures print a
// JSON error object on stderr and exit with 2 (config) or 1 (runtime).

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "uhw/core/error.hpp"
#include "uhw/experiment/config.hpp"
#include "uhw/experiment/plot_script.hpp"
#include "uhw/experiment/runner.hpp"

namespace ex = uhw::experiment;

namespace {

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned workers = 1;
};

int fail(const std::exception& e) {
  std::cerr << ex::error_json(e).dump() << "\n";
  return dynamic_cast<const uhw::ConfigError*>(&e) != nullptr ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform Hanson-Wright experiment runner"};
  app.require_subcommand(1);

  std::map<ex::Subcommand, RunArgs> args;
  std::map<ex::Subcommand, CLI::App*> subs;
  for (ex::Subcommand cmd : ex::all_subcommands()) {
    RunArgs& a = args[cmd];
    CLI::App* sub = app.add_subcommand(ex::to_string(cmd), "Run the " + ex::to_string(cmd) + " experiment");
    sub->add_option("--config", a.config, "Config JSON or run record")->required();
    sub->add_option("--seed", a.seed, "Master seed (overrides the config)");
    sub->add_option("--out", a.out, std::string("Output directory (default $") + ex::kOutDirEnv + " or .)");
    sub->add_option("--workers", a.workers, "Worker threads")->check(CLI::PositiveNumber);
    subs[cmd] = sub;
  }

  std::string csv, kind, script;
  CLI::App* plot = app.add_subcommand("plot", "Emit a matplotlib script for a result CSV");
  plot->add_option("--csv", csv, "Result CSV")->required();
  plot->add_option("--kind", kind, "tail_overlay | phase_diagram | moment_growth")->required();
  plot->add_option("--script", script, "Script path (default next to the CSV)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (plot->parsed()) {
      const auto path = ex::emit_plot_script(csv, ex::plot_kind_from_string(kind),
                                             script.empty() ? std::nullopt : std::optional<std::filesystem::path>(script));
      std::cout << nlohmann::json{{"status", "ok"}, {"script", path.string()}}.dump() << "\n";
      return 0;
    }
    for (auto& [cmd, sub] : subs) {
      if (!sub->parsed()) continue;
      const RunArgs& a = args[cmd];
      ex::ExperimentConfig config = ex::load_config(a.config);
      if (config.subcommand != cmd) {
        throw uhw::ConfigError("config is for '" + ex::to_string(config.subcommand) + "', not '" + ex::to_string(cmd) + "'",
                               {"subcommand"});
      }
      ex::RunOptions options;
      options.seed = a.seed;
      if (!a.out.empty()) options.out_dir = a.out;
      options.workers = a.workers;
      const ex::RunRecord record = ex::run(config, options);
      nlohmann::json j = record;
      j["status"] = "ok";
      j["sidecar"] = record.sidecar.string();
      std::cout << j.dump() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    return fail(e);
  }
  return 0;
}
