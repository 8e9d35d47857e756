#include "uhw/experiment/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "uhw/chaining/bounds.hpp"
#include "uhw/chaining/nets.hpp"
#include "uhw/chaos/checks.hpp"
#include "uhw/chaos/monte_carlo.hpp"
#include "uhw/circulant/operator.hpp"
#include "uhw/circulant/rip.hpp"
#include "uhw/core/error.hpp"
#include "uhw/core/format.hpp"
#include "uhw/norms/matrix_io.hpp"
#include "uhw/weibull/sampling.hpp"

namespace uhw::experiment {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Stream indices under the master seed.
constexpr std::uint64_t kGeometryStream = 0;
constexpr std::uint64_t kMonteCarloStream = 1;

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Params {
 public:
  explicit Params(const json& j) : j_(j) {}

  bool has(const char* key) const { return j_.contains(key); }
  double real(const char* key) const { return j_.at(key).get<double>(); }
  double real(const char* key, double fallback) const { return has(key) ? real(key) : fallback; }
  std::size_t count(const char* key) const { return j_.at(key).get<std::size_t>(); }
  std::size_t count(const char* key, std::size_t fallback) const { return has(key) ? count(key) : fallback; }
  bool flag(const char* key, bool fallback) const { return has(key) ? j_.at(key).get<bool>() : fallback; }
  std::string text(const char* key, const std::string& fallback = "") const {
    return has(key) ? j_.at(key).get<std::string>() : fallback;
  }
  std::vector<double> reals(const char* key) const { return j_.at(key).get<std::vector<double>>(); }
  std::vector<std::size_t> counts(const char* key) const { return j_.at(key).get<std::vector<std::size_t>>(); }

  std::size_t need(const char* key) const {
    if (!has(key)) throw ConfigError(std::string("missing key '") + key + "' for this mode", {key});
    return count(key);
  }

 private:
  const json& j_;
};

/// Files written during one run; removed again unless committed.
class OutputSet {
 public:
  OutputSet(fs::path dir, std::string stem) : dir_(std::move(dir)), stem_(std::move(stem)) {}
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& p : written_) fs::remove(p, ec);
  }

  fs::path write(const std::string& suffix, const std::string& content) {
    const fs::path path = dir_ / (stem_ + suffix);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    written_.push_back(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return path;
  }

  void commit() { committed_ = true; }
  const std::vector<fs::path>& written() const { return written_; }

 private:
  fs::path dir_;
  std::string stem_;
  std::vector<fs::path> written_;
  bool committed_ = false;
};

struct Context {
  Params p;
  std::uint64_t seed;
  unsigned workers;
  OutputSet& out;
  std::vector<fs::path> results;

  McPlan plan(std::size_t trials) const { return {trials, derive_seed(seed, kMonteCarloStream), workers}; }
  Rng geometry() const { return Rng(derive_seed(seed, kGeometryStream)); }
  void emit(const std::string& suffix, const std::string& content) { results.push_back(out.write(suffix, content)); }
  void emit_json(const json& j) { emit(".json", j.dump(2) + "\n"); }
};

std::string tail_csv(const TailCurve& c) {
  std::ostringstream os;
  write_tail_csv(os, c);
  return os.str();
}

std::string moment_csv(const MomentCurve& c) {
  std::ostringstream os;
  write_moment_csv(os, c);
  return os.str();
}

std::string ratio_csv(const chaos::RatioReport& r) {
  std::string s = "p,lhs,lhs_std_error,rhs,ratio\n";
  for (const auto& row : r.rows) {
    s += format_double(row.p) + "," + format_double(row.lhs) + "," + format_double(row.lhs_std_error) + "," +
         format_double(row.rhs) + "," + format_double(row.ratio) + "\n";
  }
  return s;
}

Vector draw(const weibull::AlphaLaw& law, Eigen::Index n, Rng& rng) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = law.draw(rng);
  return v;
}

MatrixFamily make_vx_family(const Context& ctx) {
  const std::size_t n = ctx.p.need("n");
  const std::size_t m = ctx.p.need("m");
  const std::size_t s = ctx.p.need("s");
  const std::size_t members = ctx.p.need("members");
  if (m > n || s > n) throw ConfigError("need m <= n and s <= n", {"m", "s"});
  Rng rng = ctx.geometry();
  const auto omega = circulant::random_support(n, m, rng);
  return circulant::vx_family(omega, n, s, members, rng);
}

/// Symmetric Gaussian matrices scaled to unit Frobenius norm.
MatrixFamily make_symmetric_family(std::size_t n, std::size_t members, Rng& rng) {
  std::vector<DenseMatrix> mats;
  for (std::size_t k = 0; k < members; ++k) {
    DenseMatrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.normal();
    }
    DenseMatrix a = 0.5 * (g + g.transpose());
    mats.push_back(a / a.norm());
  }
  return MatrixFamily(std::move(mats));
}

std::vector<Vector> make_points(const std::string& kind, std::size_t n, std::size_t count, Rng& rng) {
  std::vector<Vector> pts;
  const auto ni = static_cast<Eigen::Index>(n);
  if (kind == "singleton") {
    pts.push_back(Vector::Constant(ni, 1.0 / std::sqrt(static_cast<double>(n))));
  } else if (kind == "basis") {
    for (Eigen::Index i = 0; i < ni; ++i) pts.push_back(Vector::Unit(ni, i));
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      Vector v(ni);
      for (Eigen::Index i = 0; i < ni; ++i) v[i] = rng.normal();
      pts.push_back(v / v.norm());
    }
  }
  return pts;
}

void run_sample(Context& ctx) {
  const weibull::AlphaLaw law(ctx.p.real("alpha"), ctx.p.flag("standardized", false));
  const auto batch = weibull::sample_ws(law, ctx.p.count("trials"), derive_seed(ctx.seed, kMonteCarloStream));
  std::string csv = "value\n";
  for (double v : batch.values) csv += format_double(v) + "\n";
  ctx.emit(".csv", csv);

  json summary{{"alpha", law.alpha()},
               {"standardized", law.standardized()},
               {"count", batch.values.size()},
               {"seed", batch.seed},
               {"ks_distance", weibull::ks_distance_abs(batch)},
               {"psi_alpha_estimate", weibull::psi_alpha_estimate(batch)},
               {"psi_alpha_exact", law.psi_scale()}};
  if (ctx.p.has("p_grid")) {
    const auto grid = ctx.p.reals("p_grid");
    const auto fit = weibull::moment_scaling_fit(batch, grid);
    const auto exact = weibull::moment_scaling_exact(law, grid);
    summary["moment_scaling_fit"] = {
        {"theta1", fit.theta1}, {"theta2", fit.theta2}, {"p_max", fit.p_max}, {"reliable", fit.reliable}};
    summary["moment_scaling_exact"] = {{"theta1", exact.theta1}, {"theta2", exact.theta2}};
  }
  ctx.emit_json(summary);
}

void run_moments(Context& ctx) {
  const weibull::AlphaLaw law(ctx.p.real("alpha"), ctx.p.flag("standardized", false));
  const auto grid = ctx.p.reals("p_grid");
  const McPlan plan = ctx.plan(ctx.p.count("trials"));
  json summary{{"alpha", law.alpha()}, {"standardized", law.standardized()}};
  if (ctx.p.has("n")) {
    const auto n = static_cast<Eigen::Index>(ctx.p.count("n"));
    const Vector a = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    ctx.emit(".csv", moment_csv(chaos::mc_moments([&](Rng& rng) { return a.dot(draw(law, n, rng)); }, grid, plan)));
    summary["statistic"] = "linear";
    summary["check"] = chaos::linear_moment_check(a, law, grid, plan);
  } else {
    ctx.emit(".csv", moment_csv(chaos::mc_moments([&](Rng& rng) { return law.draw(rng); }, grid, plan)));
    summary["statistic"] = "coordinate";
    json exact = json::array();
    for (double p : grid) exact.push_back({{"p", p}, {"lp_norm", std::pow(law.moment(p), 1.0 / p)}});
    summary["exact"] = exact;
  }
  ctx.emit_json(summary);
}

void run_tails(Context& ctx) {
  const auto thresholds = ctx.p.reals("thresholds");
  const McPlan plan = ctx.plan(ctx.p.count("trials"));
  const std::string statistic = ctx.p.text("statistic");
  if (statistic == "constant") {
    const double value = ctx.p.real("value", 0.0);
    ctx.emit(".csv", tail_csv(chaos::mc_tail([value](Rng&) { return value; }, thresholds, plan)));
    ctx.emit_json({{"statistic", statistic}, {"value", value}});
    return;
  }
  if (!ctx.p.has("alpha")) throw ConfigError("statistic '" + statistic + "' needs alpha", {"alpha"});
  const double alpha = ctx.p.real("alpha");
  if (statistic == "single_matrix") {
    const weibull::AlphaLaw law(alpha, ctx.p.flag("standardized", false));
    DenseMatrix a;
    if (ctx.p.has("matrix_csv")) {
      std::ifstream in(ctx.p.text("matrix_csv"));
      if (!in) throw ConfigError("cannot open matrix_csv", {"matrix_csv"});
      a = norms::read_matrix_csv(in);
    } else {
      const auto n = static_cast<Eigen::Index>(ctx.p.count("n", 1));
      a = DenseMatrix::Zero(n, n);
      a(0, 0) = 1.0;
    }
    const auto report = chaos::single_matrix_tail_check(a, law, thresholds, plan);
    ctx.emit(".csv", tail_csv(report.curve));
    ctx.emit_json({{"statistic", statistic}, {"alpha", alpha}, {"report", report}});
    return;
  }
  const weibull::AlphaLaw law(alpha, ctx.p.flag("standardized", true));
  const MatrixFamily family = make_vx_family(ctx);
  const auto report = chaos::uniform_tail_check(family, law, thresholds, plan, ctx.p.real("min_survival", 1e-3));
  ctx.emit(".csv", tail_csv(report.curve));
  ctx.emit_json({{"statistic", statistic}, {"alpha", alpha}, {"report", report}});
}

void run_chaos(Context& ctx) {
  const double alpha = ctx.p.real("alpha");
  const auto grid = ctx.p.reals("p_grid");
  const McPlan plan = ctx.plan(ctx.p.count("trials"));
  const std::size_t n = ctx.p.count("n");
  const auto ni = static_cast<Eigen::Index>(n);
  const std::string check = ctx.p.text("check");
  const weibull::AlphaLaw law(alpha, ctx.p.flag("standardized", false));
  Rng rng = ctx.geometry();

  chaos::RatioReport report;
  if (check == "linear") {
    report = chaos::linear_moment_check(Vector::Constant(ni, 1.0 / std::sqrt(static_cast<double>(n))), law, grid, plan);
  } else if (check == "chaos") {
    report = chaos::chaos_moment_check(make_symmetric_family(n, 1, rng)[0], law, grid, plan);
  } else if (check == "weak_strong") {
    const auto pts = make_points(ctx.p.text("point_set", "basis"), n, ctx.p.count("members", 50), rng);
    report = chaos::weak_strong_check(pts, law, grid, plan);
  } else if (check == "prop31") {
    report = chaos::prop31_check(make_vx_family(ctx), alpha, grid, plan);
  } else {
    report = chaos::sup_norm_moment_check(make_vx_family(ctx), alpha, grid, plan);
  }
  ctx.emit(".csv", ratio_csv(report));
  ctx.emit_json({{"alpha", alpha}, {"report", report}});
}

void run_decouple(Context& ctx) {
  const weibull::AlphaLaw law(ctx.p.real("alpha"), ctx.p.flag("standardized", false));
  const auto c_grid = ctx.p.reals("c_grid");
  chaos::ConvexEven f;
  const std::string tag = ctx.p.text("f", "abs");
  if (tag == "square") {
    f.kind = chaos::ConvexEven::Kind::square;
  } else if (tag == "power") {
    f.kind = chaos::ConvexEven::Kind::power;
    f.exponent = ctx.p.real("f_exponent", 1.0);
  }
  Rng rng = ctx.geometry();
  const MatrixFamily family = make_symmetric_family(ctx.p.count("n"), ctx.p.count("members"), rng);
  const auto report = chaos::decoupling_check(family, law, f, c_grid, ctx.plan(ctx.p.count("trials")));
  std::string csv = "c,rhs,rhs_std_error,lhs,lhs_std_error\n";
  for (std::size_t i = 0; i < report.c_grid.size(); ++i) {
    csv += format_double(report.c_grid[i]) + "," + format_double(report.rhs[i]) + "," +
           format_double(report.rhs_std_error[i]) + "," + format_double(report.lhs) + "," +
           format_double(report.lhs_std_error) + "\n";
  }
  ctx.emit(".csv", csv);
  ctx.emit_json({{"alpha", law.alpha()}, {"f", f.tag()}, {"f_exponent", f.exponent}, {"report", report}});
}

void run_gamma(Context& ctx) {
  const double alpha = ctx.p.real("alpha");
  const std::size_t n = ctx.p.count("n"), m = ctx.p.count("m"), s = ctx.p.count("s");
  const MatrixFamily family = make_vx_family(ctx);
  const auto est = chaining::chaining_estimate(family, alpha);
  const auto terms = chaining::bound_terms(family, est);
  const auto dsn = chaining::dsn_gamma_bound(s, m, n, alpha);

  const auto nets = chaining::build_net_sequence(chaining::pairwise_distances(family, chaining::DistanceTag::spectral),
                                                 chaining::DistanceTag::spectral);
  std::string csv = "radius,net_size,log_net_size,cover_bound\n";
  for (std::size_t k = 0; k < nets.radii.size(); ++k) {
    const double r = nets.radii[k];
    const double size = static_cast<double>(nets.nets[k].size());
    const double bound = r > 0.0 ? chaining::dsn_cover_bound(s, m, n, r).value : std::nan("");
    csv += format_double(r) + "," + format_double(size) + "," + format_double(std::log(size)) + "," +
           format_double(bound) + "\n";
  }
  ctx.emit(".csv", csv);
  ctx.emit_json({{"alpha", alpha},
                 {"chaining", est},
                 {"terms", terms},
                 {"dsn_gamma_bound",
                  {{"gamma2", dsn.gamma2}, {"gamma_alpha", dsn.gamma_alpha}, {"gamma2_degenerate", dsn.gamma2_degenerate}}}});
}

void run_rip(Context& ctx) {
  circulant::RipExperimentParams params;
  params.alpha = ctx.p.real("alpha");
  params.n = ctx.p.count("n");
  params.m_grid = ctx.p.counts("m_grid");
  params.s = ctx.p.count("s");
  params.delta_target = ctx.p.real("delta_target", 0.5);
  params.trials = ctx.p.count("trials");
  params.seed = ctx.seed;
  params.workers = ctx.workers;
  ctx.emit(".csv", circulant::rip_rows_csv(circulant::rip_experiment(params)));
}

}  // namespace

fs::path default_output_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env != nullptr && *env != '\0' ? fs::path(env) : fs::path(".");
}

void to_json(json& j, const RunRecord& r) {
  std::vector<std::string> files;
  for (const auto& p : r.result_files) files.push_back(p.string());
  j = json{{"run_record", 1},
           {"config", serialize_config(r.config)},
           {"started_at", r.started_at},
           {"finished_at", r.finished_at},
           {"code_version", r.code_version},
           {"result_files", files},
           {"master_seed", r.master_seed},
           {"workers", r.workers}};
}

RunRecord run(ExperimentConfig config, const RunOptions& options) {
  validate(config);
  RunRecord record;
  record.started_at = utc_now();
  record.workers = options.workers == 0 ? 1 : options.workers;

  if (options.seed) config.parameters["seed"] = *options.seed;
  if (!config.parameters.contains("seed")) config.parameters["seed"] = 0;
  record.master_seed = config.parameters["seed"].get<std::uint64_t>();
  record.config = config;

  const Params params(config.parameters);
  const fs::path dir = options.out_dir.value_or(default_output_dir());
  OutputSet out(dir, params.text("output_path", to_string(config.subcommand)));
  Context ctx{params, record.master_seed, record.workers, out, {}};

  switch (config.subcommand) {
    case Subcommand::sample:
      run_sample(ctx);
      break;
    case Subcommand::moments:
      run_moments(ctx);
      break;
    case Subcommand::tails:
      run_tails(ctx);
      break;
    case Subcommand::chaos:
      run_chaos(ctx);
      break;
    case Subcommand::decouple:
      run_decouple(ctx);
      break;
    case Subcommand::gamma:
      run_gamma(ctx);
      break;
    case Subcommand::rip:
      run_rip(ctx);
      break;
  }

  record.result_files = ctx.results;
  record.finished_at = utc_now();
  record.sidecar = out.write(".run.json", json(record).dump(2) + "\n");
  out.commit();
  return record;
}

json error_json(const std::exception& e) {
  json j{{"status", "error"}, {"message", e.what()}};
  if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
    j["kind"] = "config";
    j["keys"] = ce->keys();
  } else if (dynamic_cast<const NumericalError*>(&e) != nullptr) {
    j["kind"] = "numerical";
  } else if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) {
    j["kind"] = "invalid_argument";
  } else {
    j["kind"] = "runtime";
  }
  return j;
}

}  // namespace uhw::experiment
