#include "uhw/chaos/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "uhw/chaos/forms.hpp"
#include "uhw/core/summation.hpp"

namespace uhw::chaos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector draw_vector(const weibull::AlphaLaw& law, Eigen::Index n, Rng& rng) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = law.draw(rng);
  return v;
}

double safe_ratio(double lhs, double rhs) {
  if (rhs == 0.0) return lhs == 0.0 ? 0.0 : kInf;
  return lhs / rhs;
}

void finish(RatioReport& report) {
  report.c_low = kInf;
  report.c_high = 0.0;
  for (const auto& row : report.rows) {
    report.c_low = std::min(report.c_low, row.ratio);
    report.c_high = std::max(report.c_high, row.ratio);
  }
  if (report.rows.empty()) report.c_low = 0.0;
}

void check_p_grid(std::span<const double> p_grid, double lo, double hi, const char* who) {
  if (p_grid.empty()) throw std::invalid_argument(std::string(who) + ": empty p grid");
  for (double p : p_grid) {
    if (!(p >= lo && p <= hi)) {
      throw std::invalid_argument(std::string(who) + ": p outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
}

DenseMatrix stack_points(std::span<const Vector> points) {
  if (points.empty()) throw std::invalid_argument("point set must be nonempty");
  const Eigen::Index n = points.front().size();
  DenseMatrix t(static_cast<Eigen::Index>(points.size()), n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != n) throw std::invalid_argument("points must share one dimension");
    t.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
  }
  return t;
}

}  // namespace

std::vector<double> RatioReport::ratios() const {
  std::vector<double> out;
  for (const auto& r : rows) out.push_back(r.ratio);
  return out;
}

RatioReport linear_moment_check(const Vector& a, const weibull::AlphaLaw& law, std::span<const double> p_grid,
                                const McPlan& plan) {
  check_p_grid(p_grid, 2.0, 32.0, "linear_moment_check");
  const auto samples = collect_scalar(plan, [&](Rng& rng) { return a.dot(draw_vector(law, a.size(), rng)); });
  const double l2 = a.norm();
  const double linf = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
  RatioReport report{"linear_moment", {}, 0.0, 0.0};
  for (double p : p_grid) {
    const LpEstimate est = lp_norm_estimate(samples, p);
    const double rhs = std::sqrt(p) * l2 + std::pow(p, 1.0 / law.alpha()) * linf;
    report.rows.push_back({p, est.value, est.std_error, rhs, safe_ratio(est.value, rhs)});
  }
  finish(report);
  return report;
}

RatioReport chaos_moment_check(const DenseMatrix& a, const weibull::AlphaLaw& law, std::span<const double> p_grid,
                               const McPlan& plan) {
  check_p_grid(p_grid, 2.0, 32.0, "chaos_moment_check");
  validate_matrix(a);
  if (a.rows() != a.cols() || (a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("chaos_moment_check: matrix must be symmetric");
  }
  const auto samples = collect_scalar(plan, [&](Rng& rng) {
    const Vector xi = draw_vector(law, a.rows(), rng);
    const Vector eta = draw_vector(law, a.rows(), rng);
    return xi.dot(a * eta);
  });
  const norms::NormProfile prof = norms::norm_profile(a);
  const double alpha = law.alpha();
  RatioReport report{"chaos_moment", {}, 0.0, 0.0};
  for (double p : p_grid) {
    const LpEstimate est = lp_norm_estimate(samples, p);
    const double rhs = std::sqrt(p) * prof.frobenius + p * prof.spectral +
                       std::pow(p, (alpha + 2.0) / (2.0 * alpha)) * prof.two_to_inf +
                       std::pow(p, 2.0 / alpha) * prof.entry_max;
    report.rows.push_back({p, est.value, est.std_error, rhs, safe_ratio(est.value, rhs)});
  }
  finish(report);
  return report;
}

double tail_from_moments(std::span<const double> coeffs, std::span<const double> betas, double c_last, double p0,
                         double t) {
  if (coeffs.empty() || coeffs.size() != betas.size()) throw std::invalid_argument("tail_from_moments: need matching C_k and beta_k");
  if (!(c_last > 0.0) || !(t > 0.0)) throw std::invalid_argument("tail_from_moments: C_{m+1} and t must be positive");
  double exponent = kInf;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!(coeffs[k] > 0.0) || !(betas[k] > 0.0)) throw std::invalid_argument("tail_from_moments: C_k, beta_k must be positive");
    exponent = std::min(exponent, std::pow(t / coeffs[k], 1.0 / betas[k]));
  }
  return std::min(1.0, std::exp(p0 - exponent));
}

double tail_from_moments_level(std::span<const double> coeffs, double c_last, double t) {
  return std::exp(1.0) * (static_cast<double>(coeffs.size()) * t + c_last);
}

MomentTailPoint tail_from_moments_power(std::span<const double> coeffs, std::span<const double> betas, double c_last,
                                        double p0, double t) {
  if (coeffs.empty() || coeffs.size() != betas.size()) throw std::invalid_argument("tail_from_moments: need matching C_k and beta_k");
  if (!(c_last > 0.0) || !(t > 0.0)) throw std::invalid_argument("tail_from_moments: C_{m+1} and t must be positive");
  double sum = c_last;
  for (std::size_t k = 0; k < coeffs.size(); ++k) sum += coeffs[k] * std::pow(t, betas[k]);
  return {std::exp(1.0) * sum, std::min(1.0, std::exp(p0 - t))};
}

ContractionReport contraction_check(std::span<const Vector> points, const CoordinateSampler& dominating,
                                    const CoordinateSampler& dominated, double K, double p, const McPlan& plan) {
  if (!(K >= 1.0)) throw std::invalid_argument("contraction_check: K must be >= 1");
  if (!(p >= 1.0)) throw std::invalid_argument("contraction_check: p must be >= 1");
  const DenseMatrix t = stack_points(points);
  const Eigen::Index n = t.cols();
  const TrialTable table = collect_trials(plan, 2, [&](Rng& rng, std::span<double> out) {
    Vector eta(n), xi(n);
    for (Eigen::Index i = 0; i < n; ++i) eta[i] = dominated(rng);
    for (Eigen::Index i = 0; i < n; ++i) xi[i] = dominating(rng);
    out[0] = std::pow((t * eta).cwiseAbs().maxCoeff(), p);
    out[1] = std::pow((t * xi).cwiseAbs().maxCoeff(), p);
  });
  const MeanEstimate l = mean_estimate(table.column(0));
  const MeanEstimate r = mean_estimate(table.column(1));
  const double kp = std::pow(K, p);
  ContractionReport report;
  report.lhs = l.mean;
  report.lhs_std_error = l.std_error;
  report.rhs = kp * r.mean;
  report.rhs_std_error = kp * r.std_error;
  const double err = std::hypot(report.lhs_std_error, report.rhs_std_error);
  report.holds = report.lhs <= report.rhs + 3.0 * err;
  return report;
}

RatioReport weak_strong_check(std::span<const Vector> points, const weibull::AlphaLaw& law,
                              std::span<const double> p_grid, const McPlan& plan) {
  check_p_grid(p_grid, 1.0, 64.0, "weak_strong_check");
  const DenseMatrix t = stack_points(points);
  const auto k = static_cast<std::size_t>(t.rows());
  const TrialTable table = collect_trials(plan, k + 1, [&](Rng& rng, std::span<double> out) {
    const Vector s = t * draw_vector(law, t.cols(), rng);
    double sup = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      out[i + 1] = s[static_cast<Eigen::Index>(i)];
      sup = std::max(sup, std::abs(out[i + 1]));
    }
    out[0] = sup;
  });
  const std::vector<double> sup = table.column(0);
  const double mean_sup = mean_estimate(sup).mean;
  std::vector<std::vector<double>> columns;
  for (std::size_t i = 0; i < k; ++i) columns.push_back(table.column(i + 1));

  RatioReport report{"weak_strong", {}, 0.0, 0.0};
  for (double p : p_grid) {
    const LpEstimate strong = lp_norm_estimate(sup, p);
    double weak = 0.0;
    for (const auto& col : columns) weak = std::max(weak, lp_norm_estimate(col, p).value);
    const double rhs = mean_sup + weak;
    report.rows.push_back({p, strong.value, strong.std_error, rhs, safe_ratio(strong.value, rhs)});
  }
  finish(report);
  return report;
}

double ConvexEven::operator()(double x) const {
  switch (kind) {
    case Kind::abs:
      return std::abs(x);
    case Kind::square:
      return x * x;
    case Kind::power:
      return std::pow(std::abs(x), exponent);
  }
  return 0.0;
}

std::string ConvexEven::tag() const {
  switch (kind) {
    case Kind::abs:
      return "abs";
    case Kind::square:
      return "square";
    case Kind::power:
      return "power";
  }
  return "";
}

DecouplingReport decoupling_check(const MatrixFamily& family, const weibull::AlphaLaw& law, const ConvexEven& f,
                                  std::span<const double> c_grid, const McPlan& plan) {
  if (family.rows() != family.cols()) throw std::invalid_argument("decoupling_check: members must be square");
  if (f.kind == ConvexEven::Kind::power && !(f.exponent >= 1.0)) {
    throw std::invalid_argument("decoupling_check: power exponent must be >= 1");
  }
  if (c_grid.empty()) throw std::invalid_argument("decoupling_check: empty C grid");
  for (std::size_t i = 0; i < c_grid.size(); ++i) {
    if (!(c_grid[i] > 0.0) || (i > 0 && !(c_grid[i] > c_grid[i - 1]))) {
      throw std::invalid_argument("decoupling_check: C grid must be positive and increasing");
    }
  }
  const weibull::AlphaLaw raw = law.raw();
  const Eigen::Index n = family.cols();
  std::vector<double> centers;
  for (const auto& a : family.members()) centers.push_back(law.variance() * a.trace());

  // F is even and nondecreasing in |x| for every admitted kind, so
  // sup_A F(x_A) = F(sup_A |x_A|).
  const TrialTable table = collect_trials(plan, 2, [&](Rng& rng, std::span<double> out) {
    const Vector xi = draw_vector(law, n, rng);
    const Vector eta = draw_vector(raw, n, rng);
    const Vector eta_copy = draw_vector(raw, n, rng);
    double coupled = 0.0;
    double decoupled = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      coupled = std::max(coupled, std::abs(xi.dot(family[i] * xi) - centers[i]));
      decoupled = std::max(decoupled, std::abs(eta.dot(family[i] * eta_copy)));
    }
    out[0] = coupled;
    out[1] = decoupled;
  });

  std::vector<double> lhs_values = table.column(0);
  for (double& v : lhs_values) v = f(v);
  const MeanEstimate lhs = mean_estimate(lhs_values);
  const std::vector<double> base = table.column(1);

  DecouplingReport report;
  report.lhs = lhs.mean;
  report.lhs_std_error = lhs.std_error;
  std::vector<double> scaled(base.size());
  for (double c : c_grid) {
    for (std::size_t t = 0; t < base.size(); ++t) scaled[t] = f(c * base[t]);
    const MeanEstimate rhs = mean_estimate(scaled);
    report.c_grid.push_back(c);
    report.rhs.push_back(rhs.mean);
    report.rhs_std_error.push_back(rhs.std_error);
    if (!report.smallest_c && lhs.mean <= rhs.mean + 2.0 * std::hypot(lhs.std_error, rhs.std_error)) {
      report.smallest_c = c;
    }
  }
  return report;
}

RatioReport prop31_check(const MatrixFamily& family, double alpha, std::span<const double> p_grid, const McPlan& plan,
                         std::optional<chaining::ChainingEstimate> gammas) {
  check_p_grid(p_grid, 1.0, 64.0, "prop31_check");
  const weibull::AlphaLaw law(alpha, false);
  const chaining::ChainingEstimate est = gammas ? *gammas : chaining::chaining_estimate(family, alpha);
  const double gamma_sum = est.gamma2 + est.gamma_alpha;
  const std::size_t k = family.size();
  const Eigen::Index n = family.cols();

  const TrialTable table = collect_trials(plan, k + 2, [&](Rng& rng, std::span<double> out) {
    const Vector zeta = draw_vector(law, n, rng);
    const Vector zeta_copy = draw_vector(law, n, rng);
    double sup_form = 0.0;
    double sup_norm = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const Vector az = family[i] * zeta;
      const Vector az_copy = family[i] * zeta_copy;
      const double form = az.dot(az_copy);
      out[i + 2] = form;
      sup_form = std::max(sup_form, std::abs(form));
      sup_norm = std::max(sup_norm, az_copy.norm());
    }
    out[0] = sup_form;
    out[1] = sup_norm;
  });

  const std::vector<double> sup_form = table.column(0);
  const std::vector<double> sup_norm = table.column(1);
  std::vector<std::vector<double>> forms;
  for (std::size_t i = 0; i < k; ++i) forms.push_back(table.column(i + 2));

  RatioReport report{"prop31", {}, 0.0, 0.0};
  for (double p : p_grid) {
    const LpEstimate lhs = lp_norm_estimate(sup_form, p);
    double single = 0.0;
    for (const auto& col : forms) single = std::max(single, lp_norm_estimate(col, p).value);
    const double rhs = single + lp_norm_estimate(sup_norm, p).value * gamma_sum;
    report.rows.push_back({p, lhs.value, lhs.std_error, rhs, safe_ratio(lhs.value, rhs)});
  }
  finish(report);
  return report;
}

RatioReport sup_norm_moment_check(const MatrixFamily& family, double alpha, std::span<const double> p_grid,
                                  const McPlan& plan) {
  check_p_grid(p_grid, 1.0, 64.0, "sup_norm_moment_check");
  const weibull::AlphaLaw law(alpha, false);
  const auto samples = collect_scalar(plan, [&](Rng& rng) {
    const Vector zeta = draw_vector(law, family.cols(), rng);
    double sup = 0.0;
    for (const auto& a : family.members()) sup = std::max(sup, (a * zeta).norm());
    return sup;
  });
  const double mean_sup = mean_estimate(samples).mean;
  const FamilyNorms& fn = family.norms();
  RatioReport report{"sup_norm_moment", {}, 0.0, 0.0};
  for (double p : p_grid) {
    const LpEstimate lhs = lp_norm_estimate(samples, p);
    const double rhs = mean_sup + std::sqrt(p) * fn.spectral + std::pow(p, 1.0 / alpha) * fn.two_to_inf;
    report.rows.push_back({p, lhs.value, lhs.std_error, rhs, safe_ratio(lhs.value, rhs)});
  }
  finish(report);
  return report;
}

TailExponentFit fit_tail_exponent(const TailCurve& curve, double max_survival, std::size_t min_events) {
  std::vector<double> xs, ys;
  TailExponentFit fit;
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    const double s = curve.survival[i];
    const double events = s * static_cast<double>(curve.n_trials);
    if (s <= 0.0 || s > max_survival || events < static_cast<double>(min_events) || curve.thresholds[i] <= 0.0) continue;
    xs.push_back(std::log(curve.thresholds[i]));
    ys.push_back(std::log(-std::log(s)));
    if (fit.points == 0) fit.t_min = curve.thresholds[i];
    fit.t_max = curve.thresholds[i];
    ++fit.points;
  }
  if (fit.points < 2) throw std::invalid_argument("fit_tail_exponent: fewer than two usable tail points");
  const double n = static_cast<double>(xs.size());
  const double mx = compensated_sum(xs) / n;
  const double my = compensated_sum(ys) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_tail_exponent: degenerate threshold spread");
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  return fit;
}

SingleMatrixTailReport single_matrix_tail_check(const DenseMatrix& a, const weibull::AlphaLaw& law,
                                                std::span<const double> thresholds, const McPlan& plan) {
  validate_matrix(a);
  if (thresholds.empty()) throw std::invalid_argument("single_matrix_tail_check: empty threshold grid");
  const double expected = law.variance() * a.squaredNorm();
  SingleMatrixTailReport report;
  report.curve = survival_curve(collect_scalar(plan,
                                               [&](Rng& rng) {
                                                 const Vector xi = draw_vector(law, a.cols(), rng);
                                                 return std::abs((a * xi).squaredNorm() - expected);
                                               }),
                                thresholds, plan.seed);
  const DenseMatrix gram = a.transpose() * a;
  report.gram_frobenius = gram.norm();
  report.gram_spectral = norms::spectral_norm(a) * norms::spectral_norm(a);

  const double alpha = law.alpha();
  auto exponent = [&](double t) {
    double e = kInf;
    if (report.gram_frobenius > 0.0) e = std::min(e, std::pow(t / report.gram_frobenius, 2.0));
    if (report.gram_spectral > 0.0) e = std::min(e, std::pow(t / report.gram_spectral, alpha / 2.0));
    return e;
  };

  report.anchor = thresholds.size() / 2;
  const double s_anchor = report.curve.survival[report.anchor];
  const double log_c1 = s_anchor > 0.0 ? std::log(s_anchor) + exponent(thresholds[report.anchor]) : -kInf;
  report.fitted_c1 = std::exp(log_c1);
  report.dominated = true;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const double e = exponent(thresholds[i]);
    const double b = std::isinf(e) || std::isinf(log_c1) ? 0.0 : std::min(1.0, std::exp(log_c1 - e));
    report.curve.bound.push_back(b);
    if (i >= report.anchor && b < report.curve.ci_low[i]) report.dominated = false;
  }
  try {
    report.exponent = fit_tail_exponent(report.curve);
  } catch (const std::invalid_argument&) {
    report.exponent.reset();
  }
  return report;
}

UniformTailReport uniform_tail_check(const MatrixFamily& family, const weibull::AlphaLaw& law,
                                     std::span<const double> thresholds, const McPlan& plan, double min_survival,
                                     std::optional<chaining::ChainingEstimate> gammas) {
  if (thresholds.empty()) throw std::invalid_argument("uniform_tail_check: empty threshold grid");
  UniformTailReport report;
  report.gammas = gammas ? *gammas : chaining::chaining_estimate(family, law.alpha());
  report.terms = chaining::bound_terms(family, report.gammas);
  report.L = law.psi_scale();
  report.M_2to2 = report.terms.M_2to2;
  report.min_survival = min_survival;
  const double variance = law.variance();
  report.curve = survival_curve(collect_scalar(plan,
                                               [&](Rng& rng) {
                                                 return centered_sup(family, draw_vector(law, family.cols(), rng),
                                                                     variance);
                                               }),
                                thresholds, plan.seed);

  report.anchor = thresholds.size() / 2;
  const double s_anchor = report.curve.survival[report.anchor];
  const double l2 = report.L * report.L;
  if (!(s_anchor > 0.0)) {
    report.dominated = false;
    report.fitted_shift = std::numeric_limits<double>::quiet_NaN();
    report.curve.bound.assign(thresholds.size(), std::numeric_limits<double>::quiet_NaN());
    return report;
  }
  const double t_anchor =
      chaining::theorem1_regime_inverse(report.terms, law.alpha(), report.M_2to2, -std::log(s_anchor));
  report.fitted_shift = thresholds[report.anchor] - l2 * t_anchor;

  std::vector<double> deviations;
  for (double tau : thresholds) deviations.push_back((tau - report.fitted_shift) / l2);
  report.curve.bound =
      chaining::theorem1_curve(report.terms, report.L, law.alpha(), report.M_2to2, deviations).bound;
  report.dominated = true;
  for (std::size_t i = report.anchor + 1; i < thresholds.size(); ++i) {
    if (report.curve.survival[i] < min_survival) break;
    if (report.curve.bound[i] < report.curve.ci_low[i]) report.dominated = false;
  }
  return report;
}

void to_json(nlohmann::json& j, const RatioReport& r) {
  j = nlohmann::json{{"check", r.name}, {"c_low", r.c_low}, {"c_high", r.c_high}, {"rows", nlohmann::json::array()}};
  for (const auto& row : r.rows) {
    j["rows"].push_back(
        {{"p", row.p}, {"lhs", row.lhs}, {"lhs_std_error", row.lhs_std_error}, {"rhs", row.rhs}, {"ratio", row.ratio}});
  }
}

void to_json(nlohmann::json& j, const ContractionReport& r) {
  j = nlohmann::json{{"check", "contraction"}, {"lhs", r.lhs},   {"lhs_std_error", r.lhs_std_error},
                     {"rhs", r.rhs},           {"rhs_std_error", r.rhs_std_error}, {"holds", r.holds}};
}

void to_json(nlohmann::json& j, const DecouplingReport& r) {
  j = nlohmann::json{{"check", "decoupling"},
                     {"lhs", r.lhs},
                     {"lhs_std_error", r.lhs_std_error},
                     {"c_grid", r.c_grid},
                     {"rhs", r.rhs},
                     {"rhs_std_error", r.rhs_std_error}};
  if (r.smallest_c) {
    j["smallest_c"] = *r.smallest_c;
  } else {
    j["smallest_c"] = nullptr;
    j["error"] = "no C in grid";
  }
}

void to_json(nlohmann::json& j, const TailExponentFit& r) {
  j = nlohmann::json{{"exponent", r.exponent}, {"intercept", r.intercept}, {"points", r.points},
                     {"t_min", r.t_min},       {"t_max", r.t_max}};
}

void to_json(nlohmann::json& j, const SingleMatrixTailReport& r) {
  j = nlohmann::json{{"check", "single_matrix_tail"},
                     {"gram_frobenius", r.gram_frobenius},
                     {"gram_spectral", r.gram_spectral},
                     {"fitted_c1", r.fitted_c1},
                     {"anchor_threshold", r.curve.thresholds.empty() ? 0.0 : r.curve.thresholds[r.anchor]},
                     {"dominated", r.dominated}};
  j["tail_exponent"] = r.exponent ? nlohmann::json(*r.exponent) : nlohmann::json(nullptr);
}

}  // namespace uhw::chaos

namespace uhw::chaos {

void to_json(nlohmann::json& j, const UniformTailReport& r) {
  j = nlohmann::json{{"check", "uniform_tail"},
                     {"chaining", r.gammas},
                     {"terms", r.terms},
                     {"L", r.L},
                     {"M_2to2", r.M_2to2},
                     {"anchor_threshold", r.curve.thresholds[r.anchor]},
                     {"fitted_shift", r.fitted_shift},
                     {"min_survival", r.min_survival},
                     {"dominated", r.dominated}};
}

}  // namespace uhw::chaos
