#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "../common/smoke_configs.hpp"
#include "uhw/core/error.hpp"
#include "uhw/experiment/plot_script.hpp"
#include "uhw/experiment/runner.hpp"

using namespace uhw;
using namespace uhw::experiment;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("uhw_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::vector<std::string> config_error_keys(const json& raw) {
  try {
    validate(parse_config(raw));
  } catch (const ConfigError& e) {
    auto keys = e.keys();
    std::sort(keys.begin(), keys.end());
    return keys;
  }
  return {};
}

json rip_config() {
  return {{"schema_version", 1},
          {"subcommand", "rip"},
          {"parameters",
           {{"alpha", 1.0}, {"n", 16}, {"m_grid", {4, 8, 12, 16}}, {"s", 2}, {"trials", 200}, {"seed", 1}}}};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Config, RoundTrip) {
  for (const auto& cfg : smoke::smoke_configs()) {
    EXPECT_EQ(parse_config(serialize_config(cfg)), cfg) << to_string(cfg.subcommand);
    EXPECT_NO_THROW(validate(cfg));
  }
  for (Subcommand cmd : all_subcommands()) EXPECT_EQ(subcommand_from_string(to_string(cmd)), cmd);
  EXPECT_THROW(subcommand_from_string("plot"), ConfigError);
}

TEST(Config, ListsEveryOffendingKey) {
  json raw = rip_config();
  raw["parameters"].erase("s");
  raw["parameters"]["bogus"] = 1;
  raw["parameters"]["alpha"] = 1.5;
  raw["parameters"]["m_grid"] = "four";
  EXPECT_EQ(config_error_keys(raw), (std::vector<std::string>{"alpha", "bogus", "m_grid", "s"}));

  json top = rip_config();
  top["extra"] = true;
  EXPECT_THROW(parse_config(top), ConfigError);
  json version = rip_config();
  version.erase("schema_version");
  EXPECT_THROW(parse_config(version), ConfigError);

  json choice = {{"schema_version", 1},
                 {"subcommand", "tails"},
                 {"parameters", {{"statistic", "median"}, {"thresholds", {1}}, {"trials", 10}}}};
  EXPECT_EQ(config_error_keys(choice), (std::vector<std::string>{"statistic"}));
  json count = rip_config();
  count["parameters"]["trials"] = 2.5;
  EXPECT_EQ(config_error_keys(count), (std::vector<std::string>{"trials"}));
}

TEST(Run, ConstantTailsWritesZerosAndSidecar) {
  TempDir dir;
  const auto cfg = smoke::smoke_configs()[2];
  const RunRecord rec = run(cfg, {std::nullopt, dir.path(), 1});
  const auto csv = lines(smoke::slurp(dir.path() / "tails_constant.csv"));
  ASSERT_EQ(csv.size(), 4u);
  for (std::size_t i = 1; i < csv.size(); ++i) EXPECT_EQ(csv[i].substr(csv[i].find(',') + 1, 2), "0,");
  ASSERT_TRUE(fs::exists(rec.sidecar));
  const json side = json::parse(smoke::slurp(rec.sidecar));
  EXPECT_EQ(side["code_version"], kCodeVersion);
  EXPECT_EQ(side["master_seed"], 0);
  EXPECT_EQ(parse_config(side["config"]), rec.config);
  EXPECT_FALSE(side["started_at"].get<std::string>().empty());
  EXPECT_EQ(side["result_files"].size(), 2u);
}

TEST(Run, RipExampleGivesFourRows) {
  TempDir dir;
  const auto start = std::chrono::steady_clock::now();
  const RunRecord rec = run(parse_config(rip_config()), {std::nullopt, dir.path(), 1});
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 60.0);
  const auto csv = lines(smoke::slurp(dir.path() / "rip.csv"));
  ASSERT_EQ(csv.size(), 5u);
  EXPECT_EQ(csv[0].substr(0, 10), "alpha,n,m,");
}

TEST(Run, EverySmokeConfigIsFastAndWorkerIndependent) {
  for (const auto& cfg : smoke::smoke_configs()) {
    TempDir one, eight;
    const auto start = std::chrono::steady_clock::now();
    const RunRecord a = run(cfg, {std::nullopt, one.path(), 1});
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 1.0)
        << cfg.parameters.dump();
    const RunRecord b = run(cfg, {std::nullopt, eight.path(), 8});
    ASSERT_EQ(a.result_files.size(), b.result_files.size());
    for (std::size_t i = 0; i < a.result_files.size(); ++i) {
      EXPECT_EQ(a.result_files[i].filename(), b.result_files[i].filename());
      EXPECT_EQ(smoke::slurp(a.result_files[i]), smoke::slurp(b.result_files[i]))
          << a.result_files[i] << " " << cfg.parameters.dump();
    }
  }
}

TEST(Run, RerunFromRecordReproducesBytes) {
  for (const auto& cfg : smoke::smoke_configs()) {
    TempDir first, second;
    const RunRecord a = run(cfg, {std::uint64_t{77}, first.path(), 2});
    const ExperimentConfig again = load_config(a.sidecar);
    EXPECT_EQ(again.parameters["seed"], 77);
    const RunRecord b = run(again, {std::nullopt, second.path(), 3});
    EXPECT_EQ(b.master_seed, 77u);
    for (std::size_t i = 0; i < a.result_files.size(); ++i) {
      EXPECT_EQ(smoke::slurp(a.result_files[i]), smoke::slurp(b.result_files[i]));
    }
  }
}

TEST(Run, SeedChangesOutput) {
  TempDir a, b;
  const auto cfg = smoke::smoke_configs()[0];
  const auto ra = run(cfg, {std::uint64_t{1}, a.path(), 1});
  const auto rb = run(cfg, {std::uint64_t{2}, b.path(), 1});
  EXPECT_NE(smoke::slurp(ra.result_files[0]), smoke::slurp(rb.result_files[0]));
}

TEST(Run, FailureRemovesPartialOutputs) {
  TempDir dir;
  auto cfg = smoke::smoke_configs()[3];
  // A matrix file that does not exist fails after the run has started.
  cfg.parameters["matrix_csv"] = (dir.path() / "missing.csv").string();
  EXPECT_ANY_THROW(run(cfg, {std::nullopt, dir.path(), 1}));
  EXPECT_TRUE(fs::is_empty(dir.path()));

  ExperimentConfig bad = smoke::smoke_configs()[0];
  bad.parameters.erase("alpha");
  try {
    run(bad, {std::nullopt, dir.path(), 1});
    FAIL();
  } catch (const ConfigError& e) {
    const json j = error_json(e);
    EXPECT_EQ(j["status"], "error");
    EXPECT_EQ(j["kind"], "config");
    EXPECT_EQ(j["keys"], json::array({"alpha"}));
  }
  EXPECT_TRUE(fs::is_empty(dir.path()));
}

TEST(Run, DefaultOutputDirectoryFromEnvironment) {
  TempDir dir;
  ::setenv(kOutDirEnv, dir.path().c_str(), 1);
  EXPECT_EQ(default_output_dir(), dir.path());
  const RunRecord rec = run(smoke::smoke_configs()[2]);
  EXPECT_TRUE(fs::exists(dir.path() / "tails_constant.csv"));
  EXPECT_EQ(rec.sidecar, dir.path() / "tails_constant.run.json");
  ::unsetenv(kOutDirEnv);
  EXPECT_EQ(default_output_dir(), fs::path("."));
}

TEST(Run, DeriveSeedReexported) {
  EXPECT_EQ(experiment::derive_seed(0, 0), 0xE220A8397B1DCDAFull);
}

TEST(PlotScript, TailOverlayReferencesColumns) {
  TempDir dir;
  run(smoke::smoke_configs()[4], {std::nullopt, dir.path(), 1});
  const fs::path script = emit_plot_script(dir.path() / "tails_uniform.csv", PlotKind::tail_overlay);
  EXPECT_EQ(script, dir.path() / "tails_uniform.tail_overlay.py");
  const std::string text = smoke::slurp(script);
  for (const char* col : {"threshold", "estimate", "bound"}) EXPECT_NE(text.find(col), std::string::npos) << col;
  EXPECT_NE(text.find("savefig"), std::string::npos);
}

TEST(PlotScript, PhaseDiagramOnRipCsv) {
  TempDir dir;
  run(smoke::smoke_configs()[7], {std::nullopt, dir.path(), 1});
  const std::string text = smoke::slurp(emit_plot_script(dir.path() / "rip.csv", PlotKind::phase_diagram));
  for (const char* col : {"\"m\"", "\"s\"", "successes"}) EXPECT_NE(text.find(col), std::string::npos) << col;
}

TEST(PlotScript, MissingColumnIsNamed) {
  TempDir dir;
  run(smoke::smoke_configs()[7], {std::nullopt, dir.path(), 1});
  try {
    emit_plot_script(dir.path() / "rip.csv", PlotKind::moment_growth);
    FAIL();
  } catch (const ColumnMismatchError& e) {
    EXPECT_NE(std::string(e.what()).find("'p'"), std::string::npos);
  }
  EXPECT_FALSE(fs::exists(dir.path() / "rip.moment_growth.py"));
  EXPECT_ANY_THROW(emit_plot_script(dir.path() / "absent.csv", PlotKind::tail_overlay));
}

TEST(Cli, ExitCodesAndErrorJson) {
  TempDir dir;
  const fs::path good = dir.path() / "good.json", bad = dir.path() / "bad.json";
  std::ofstream(good) << serialize_config(smoke::smoke_configs()[2]).dump();
  json broken = serialize_config(smoke::smoke_configs()[2]);
  broken["parameters"]["trials"] = -1;
  std::ofstream(bad) << broken.dump();
  const std::string cli = UHW_CLI_PATH;
  const std::string out = " --out " + dir.path().string();
  EXPECT_EQ(std::system((cli + " tails --config " + good.string() + out + " > /dev/null").c_str()), 0);
  const fs::path err = dir.path() / "err.txt";
  const int status = std::system((cli + " tails --config " + bad.string() + out + " 2> " + err.string()).c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
  const json j = json::parse(smoke::slurp(err));
  EXPECT_EQ(j["keys"], json::array({"trials"}));
  EXPECT_NE(WEXITSTATUS(std::system((cli + " rip --config " + good.string() + out + " 2> /dev/null").c_str())), 0);
}
