// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "../common/smoke_configs.hpp"
#include "uhw/chaining/bounds.hpp"
#include "uhw/chaos/checks.hpp"
#include "uhw/circulant/convolution.hpp"
#include "uhw/circulant/operator.hpp"
#include "uhw/circulant/rip.hpp"
#include "uhw/core/summation.hpp"
#include "uhw/experiment/runner.hpp"
#include "uhw/weibull/sampling.hpp"

using namespace uhw;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kKsMax = 0.01;
constexpr double kKsSeconds = 5.0;
constexpr double kMomentSigmas = 3.0;
constexpr double kMomentSeconds = 30.0;
constexpr double kConvolutionTol = 1e-9;
constexpr double kVxTol = 1e-10;
constexpr double kEnergyRelTol = 0.01;
constexpr double kExponentTarget = 0.5;
constexpr double kExponentTol = 0.1;
constexpr double kDecouplingCMax = 100.0;
constexpr double kDecouplingCvMax = 0.2;
constexpr double kWeakStrongMax = 10.0;
constexpr double kProp31Max = 10.0;
constexpr double kUniformMinSurvival = 1e-3;
constexpr double kRipSeconds = 600.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Vector normal_vector(std::size_t n, Rng& rng) {
  Vector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = rng.normal();
  return v;
}

const std::vector<double> kAlphas{0.5, 1.0};

Outcome ac1() {
  double worst = 0.0, slowest = 0.0;
  for (double a : kAlphas) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto batch = weibull::sample_ws(weibull::AlphaLaw(a), 100000, 101);
    worst = std::max(worst, weibull::ks_distance_abs(batch));
    slowest = std::max(slowest, seconds_since(t0));
  }
  return {worst < kKsMax && slowest < kKsSeconds, fmt("max KS %.5f, max runtime %.3f s", worst, slowest)};
}

Outcome ac2() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double a : kAlphas) {
    const auto batch = weibull::sample_ws(weibull::AlphaLaw(a), 1000000, 20261016);
    for (double p : {1.0, 2.0, 3.0, 4.0}) {
      std::vector<double> powered(batch.values.size());
      std::transform(batch.values.begin(), batch.values.end(), powered.begin(),
                     [p](double x) { return std::pow(std::abs(x), p); });
      const auto est = mean_estimate(powered);
      worst = std::max(worst, std::abs(est.mean - weibull::ws_moment(a, p)) / est.std_error);
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= kMomentSigmas && secs < kMomentSeconds,
          fmt("max |error|/SE %.3f, runtime %.2f s", worst, secs)};
}

Outcome ac3() {
  Rng rng(103);
  double worst = 0.0;
  for (std::size_t n : {8u, 64u, 1024u}) {
    for (int rep = 0; rep < 100; ++rep) {
      const Vector z = normal_vector(n, rng), x = normal_vector(n, rng);
      worst = std::max(worst, (circulant::circ_convolve_fft(z, x) - circulant::circ_convolve_direct(z, x))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  return {worst < kConvolutionTol, fmt("max deviation %.3e", worst)};
}

Outcome ac4() {
  Rng rng(104);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng.below(31);
    const std::size_t m = 1 + rng.below(n);
    const auto omega = circulant::random_support(n, m, rng);
    const Vector x = normal_vector(n, rng), eta = normal_vector(n, rng);
    const Vector conv = circulant::circ_convolve_direct(x, eta);
    const Vector lhs = circulant::build_vx(x, omega, n) * eta;
    for (std::size_t j = 0; j < m; ++j) {
      worst = std::max(worst, std::abs(lhs[j] - conv[omega[j]] / std::sqrt(double(m))));
    }
  }
  return {worst < kVxTol, fmt("max deviation %.3e over 100 instances", worst)};
}

Outcome ac5() {
  Rng rng(105);
  const std::size_t n = 1024, m = 512;
  const auto omega = circulant::random_support(n, m, rng);
  Vector x = normal_vector(n, rng);
  x.normalize();
  double worst = 0.0;
  for (double a : kAlphas) {
    const weibull::AlphaLaw law(a, true);
    const circulant::CirculantOperator op(circulant::random_generator(law, n, rng), omega);
    worst = std::max(worst, circulant::expected_energy_check(op, x, law, {100000, 205, 1}).relative_deviation());
  }
  return {worst < kEnergyRelTol, fmt("max relative deviation %.5f", worst)};
}

Outcome ac6() {
  Rng rng(106);
  bool equal = true;
  for (int rep = 0; rep < 10; ++rep) {
    const weibull::AlphaLaw law(rep % 2 ? 1.0 : 0.5, true);
    const circulant::CirculantOperator op(circulant::random_generator(law, 8, rng), circulant::random_support(8, 4, rng));
    const DenseMatrix phi = circulant::dense_phi(op);
    const circulant::SparseSpec spec{2, 8};
    const auto exact = circulant::rip_exact(phi, spec);
    const auto sampled = circulant::rip_sampled(phi, spec, circulant::binomial(8, 2), 300 + rep);
    equal = equal && exact.delta == sampled.delta;
  }
  DenseMatrix diag = DenseMatrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = 0.5;
  const double d = circulant::rip_exact(diag, {1, 2}).delta;
  return {equal && d == 0.75, std::string(equal ? "sampled == exact on 10 operators" : "sampled != exact") +
                                  fmt(", diag(1, 1/2) gives %.17g", d)};
}

Outcome ac7() {
  Rng rng(107);
  int violations = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const weibull::AlphaLaw law(rep % 2 ? 1.0 : 0.5, true);
    const circulant::CirculantOperator op(circulant::random_generator(law, 12, rng),
                                          circulant::random_support(12, 6, rng));
    const DenseMatrix phi = circulant::dense_phi(op);
    double prev = -1.0;
    for (std::size_t s = 1; s <= 3; ++s) {
      const double d = circulant::rip_exact(phi, {s, 12}).delta;
      if (d < prev) ++violations;
      prev = d;
    }
  }
  return {violations == 0, fmt("%.0f decreases over 20 operators", violations)};
}

Outcome ac8() {
  DenseMatrix e11 = DenseMatrix::Zero(4, 4);
  e11(0, 0) = 1.0;
  std::vector<double> th;
  for (double t = 2.0; t <= 120.0; t += 2.0) th.push_back(t);
  const auto rep = chaos::single_matrix_tail_check(e11, weibull::AlphaLaw(1.0), th, {1000000, 108, 1});
  if (!rep.exponent) return {false, "exponent fit failed"};
  const double e = rep.exponent->exponent;
  return {std::abs(e - kExponentTarget) <= kExponentTol,
          fmt("fitted exponent %.4f on %.0f points", e, double(rep.exponent->points))};
}

MatrixFamily symmetric_family(std::size_t n, std::size_t members, Rng& rng) {
  std::vector<DenseMatrix> out;
  for (std::size_t k = 0; k < members; ++k) {
    DenseMatrix g(n, n);
    for (auto& v : g.reshaped()) v = rng.normal();
    DenseMatrix a = 0.5 * (g + g.transpose());
    out.push_back(a / a.norm());
  }
  return MatrixFamily(std::move(out));
}

Outcome ac9() {
  std::vector<double> grid;
  for (int k = -8; k <= 28; ++k) grid.push_back(std::pow(2.0, k / 4.0));
  double worst_c = 0.0, worst_cv = 0.0;
  int missing = 0;
  Rng rng(109);
  for (int fam = 0; fam < 10; ++fam) {
    const MatrixFamily family = symmetric_family(8, 5, rng);
    for (double a : kAlphas) {
      std::vector<double> cs;
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rep = chaos::decoupling_check(family, weibull::AlphaLaw(a), {}, grid,
                                                 {20000, derive_seed(1000 + fam, seed), 1});
        if (!rep.smallest_c) {
          ++missing;
          continue;
        }
        cs.push_back(*rep.smallest_c);
        worst_c = std::max(worst_c, *rep.smallest_c);
      }
      if (cs.size() > 1) {
        const auto m = mean_estimate(cs);
        worst_cv = std::max(worst_cv, m.std_error * std::sqrt(double(cs.size())) / m.mean);
      }
    }
  }
  return {missing == 0 && worst_c <= kDecouplingCMax && worst_cv < kDecouplingCvMax,
          fmt("max C %.3f, max CV across seeds %.3f, runs without C %.0f", worst_c, worst_cv, missing)};
}

Outcome ac10() {
  const std::size_t n = 16;
  Rng rng(110);
  std::vector<Vector> single{normal_vector(n, rng).normalized()};
  std::vector<Vector> basis, random;
  for (std::size_t i = 0; i < n; ++i) basis.push_back(Vector::Unit(n, i));
  for (int i = 0; i < 50; ++i) random.push_back(normal_vector(n, rng).normalized());
  const std::vector<double> ps{2.0, 4.0, 8.0};
  double worst = 0.0;
  for (double a : kAlphas) {
    for (const auto* set : {&single, &basis, &random}) {
      worst = std::max(worst, chaos::weak_strong_check(*set, weibull::AlphaLaw(a), ps, {100000, 210, 1}).c_high);
    }
  }
  return {worst <= kWeakStrongMax, fmt("max ratio %.4f", worst)};
}

Outcome ac11() {
  const std::vector<double> ps{2.0, 4.0};
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(derive_seed(111, seed));
    const auto omega = circulant::random_support(16, 8, rng);
    const MatrixFamily family = circulant::vx_family(omega, 16, 2, 10, rng);
    for (double a : kAlphas) {
      worst = std::max(worst, chaos::prop31_check(family, a, ps, {20000, derive_seed(211, seed), 1}).c_high);
    }
  }
  return {worst <= kProp31Max, fmt("max ratio %.4f over 20 seeds", worst)};
}

Outcome ac12() {
  Rng rng(112);
  const auto omega = circulant::random_support(32, 16, rng);
  const MatrixFamily family = circulant::vx_family(omega, 32, 2, 50, rng);
  bool all = true;
  std::string detail;
  for (double a : kAlphas) {
    const double t_max = a == 1.0 ? 6.0 : 48.0;
    std::vector<double> th;
    for (int i = 1; i <= 40; ++i) th.push_back(t_max * i / 40.0);
    const auto rep = chaos::uniform_tail_check(family, weibull::AlphaLaw(a, true), th, {200000, 212, 1},
                                               kUniformMinSurvival);
    std::size_t deepest = rep.anchor;
    while (deepest + 1 < th.size() && rep.curve.survival[deepest + 1] >= kUniformMinSurvival) ++deepest;
    all = all && rep.dominated && deepest > rep.anchor;
    detail += fmt("alpha %.1f: ", a) + (rep.dominated ? "dominated" : "NOT dominated") +
              fmt(" from threshold %.2f through %.2f; ", th[rep.anchor], th[deepest]);
  }
  return {all, detail};
}

Outcome ac13() {
  const auto t0 = std::chrono::steady_clock::now();
  bool monotone = true;
  std::string detail;
  for (double a : kAlphas) {
    circulant::RipExperimentParams params;
    params.alpha = a;
    params.n = 64;
    params.m_grid = {8, 16, 32, 64};
    params.s = 2;
    params.trials = 200;
    params.seed = 113;
    const auto rows = circulant::rip_experiment(params);
    detail += fmt("alpha %.1f rates", a);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      detail += fmt(" %.3f", rows[i].success_rate());
      if (i > 0 && rows[i].ci_high < rows[i - 1].ci_low) monotone = false;
    }
    detail += "; ";
  }
  const double secs = seconds_since(t0);
  return {monotone && secs < kRipSeconds, detail + fmt("runtime %.1f s", secs)};
}

Outcome ac14() {
  const fs::path root = fs::temp_directory_path() / "uhw_acceptance_determinism";
  fs::remove_all(root);
  std::size_t compared = 0, differing = 0;
  for (const auto& cfg : smoke::smoke_configs()) {
    const auto a = experiment::run(cfg, {std::uint64_t{114}, root / "w1", 1});
    const auto b = experiment::run(cfg, {std::uint64_t{114}, root / "w8", 8});
    for (std::size_t i = 0; i < a.result_files.size(); ++i) {
      ++compared;
      if (smoke::slurp(a.result_files[i]) != smoke::slurp(b.result_files[i])) ++differing;
    }
    // The sidecar differs only in timestamps and the worker count.
    auto sa = nlohmann::json::parse(smoke::slurp(a.sidecar)), sb = nlohmann::json::parse(smoke::slurp(b.sidecar));
    for (auto* s : {&sa, &sb}) {
      for (const char* k : {"started_at", "finished_at", "workers", "result_files"}) s->erase(k);
    }
    ++compared;
    if (sa != sb) ++differing;
  }
  fs::remove_all(root);
  return {differing == 0, fmt("%.0f files compared, %.0f differ", double(compared), double(differing))};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"sampler KS distance", ac1},
      {"moment formula", ac2},
      {"convolution oracle equivalence", ac3},
      {"V_x identity", ac4},
      {"energy identity", ac5},
      {"RIP oracle", ac6},
      {"RIP monotone in s", ac7},
      {"single-matrix tail exponent", ac8},
      {"decoupling dominance", ac9},
      {"weak-strong ratio", ac10},
      {"chaining moment ratio", ac11},
      {"uniform tail dominance", ac12},
      {"RIP phase behavior", ac13},
      {"determinism across workers", ac14},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("AC%zu %s %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
