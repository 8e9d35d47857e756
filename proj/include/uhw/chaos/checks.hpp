#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "uhw/chaining/bounds.hpp"
#include "uhw/core/curves.hpp"
#include "uhw/core/parallel.hpp"
#include "uhw/norms/family.hpp"
#include "uhw/weibull/alpha_law.hpp"

// Empirical checks of the moment and tail inequalities behind the uniform
// Hanson-Wright bound. None of the inequalities carry explicit constants, so
// each check reports a ratio or bracket rather than a pass/fail verdict
// unless a constant is supplied.

namespace uhw::chaos {

/// One grid point of a moment comparison: lhs is the Monte Carlo quantity,
/// rhs the comparison scale, ratio = lhs / rhs (0 when both vanish).
struct RatioRow {
  double p = 0.0;
  double lhs = 0.0;
  double lhs_std_error = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct RatioReport {
  std::string name;
  std::vector<RatioRow> rows;
  double c_low = 0.0;   ///< min ratio over the grid
  double c_high = 0.0;  ///< max ratio over the grid

  std::vector<double> ratios() const;
};

/// || sum a_i xi_i ||_{L_p} against p^{1/2} ||a||_2 + p^{1/alpha} ||a||_inf.
/// p_grid must lie in [2, 32].
RatioReport linear_moment_check(const Vector& a, const weibull::AlphaLaw& law, std::span<const double> p_grid,
                                const McPlan& plan);

/// Decoupled chaos || xi^T A xi~ ||_{L_p} against the four-term scale
/// p^{1/2}||A||_F + p||A||_{2->2} + p^{(alpha+2)/(2alpha)}||A||_{2->inf} + p^{2/alpha}||A||_inf.
/// A must be symmetric.
RatioReport chaos_moment_check(const DenseMatrix& a, const weibull::AlphaLaw& law, std::span<const double> p_grid,
                               const McPlan& plan);

/// Tail bound from a moment profile
/// ||xi||_p <= sum_k C_k p^{beta_k} + C_{m+1} for p >= p0:
/// returns min(1, e^{p0} exp(-min_k (t / C_k)^{1/beta_k})), valid at the level
/// e (m t + C_{m+1}).
double tail_from_moments(std::span<const double> coeffs, std::span<const double> betas, double c_last, double p0,
                         double t);

/// Level e (m t + C_{m+1}) at which tail_from_moments applies.
double tail_from_moments_level(std::span<const double> coeffs, double c_last, double t);

/// Companion form: P{|xi| > e (sum_k C_k t^{beta_k} + C_{m+1})} <= e^{p0} e^{-t}.
struct MomentTailPoint {
  double level = 0.0;
  double bound = 0.0;
};
MomentTailPoint tail_from_moments_power(std::span<const double> coeffs, std::span<const double> betas, double c_last,
                                        double p0, double t);

using CoordinateSampler = std::function<double(Rng&)>;

struct ContractionReport {
  double lhs = 0.0;  ///< E sup_T |sum eta_i t_i|^p
  double lhs_std_error = 0.0;
  double rhs = 0.0;  ///< K^p E sup_T |sum xi_i t_i|^p
  double rhs_std_error = 0.0;
  bool holds = false;  ///< lhs <= rhs + 3 combined standard errors

  double ratio() const { return rhs == 0.0 ? 0.0 : lhs / rhs; }
};

/// Contraction comparison for a finite point set T in R^n; the caller
/// guarantees P{|eta| > t} <= K P{|xi| > t}.
ContractionReport contraction_check(std::span<const Vector> points, const CoordinateSampler& dominating,
                                    const CoordinateSampler& dominated, double K, double p, const McPlan& plan);

/// || sup_T |S_t| ||_p / (E sup_T |S_t| + sup_T ||S_t||_p) per p, where
/// S_t = sum t_i xi_i.
RatioReport weak_strong_check(std::span<const Vector> points, const weibull::AlphaLaw& law,
                              std::span<const double> p_grid, const McPlan& plan);

/// Convex even functions admitted by decoupling_check.
struct ConvexEven {
  enum class Kind { abs, square, power };
  Kind kind = Kind::abs;
  double exponent = 1.0;  ///< used by Kind::power, >= 1

  double operator()(double x) const;
  std::string tag() const;
};

struct DecouplingReport {
  double lhs = 0.0;  ///< E sup_A F(xi^T A xi - E xi^T A xi)
  double lhs_std_error = 0.0;
  std::vector<double> c_grid;
  std::vector<double> rhs;  ///< E sup_A F(C eta^T A eta~) per grid C
  std::vector<double> rhs_std_error;
  std::optional<double> smallest_c;  ///< empty: no grid C showed dominance
};

/// xi drawn from `law` (centered, coordinates i.i.d.); eta, eta~ i.i.d. raw
/// W_s(alpha). Reports the smallest grid C with lhs <= rhs(C) + 2 combined
/// standard errors. c_grid must be increasing.
DecouplingReport decoupling_check(const MatrixFamily& family, const weibull::AlphaLaw& law, const ConvexEven& f,
                                  std::span<const double> c_grid, const McPlan& plan);

/// || sup_A |zeta^T A^T A zeta~| ||_p against
/// sup_A || zeta^T A^T A zeta~ ||_p + || sup_A ||A zeta~||_2 ||_p (gamma2 + gamma_alpha),
/// zeta, zeta~ i.i.d. raw W_s(alpha). Chaining surrogates are computed from
/// the family when not supplied.
RatioReport prop31_check(const MatrixFamily& family, double alpha, std::span<const double> p_grid, const McPlan& plan,
                         std::optional<chaining::ChainingEstimate> gammas = std::nullopt);

/// || sup_A ||A zeta||_2 ||_p against E sup_A ||A zeta||_2 + sqrt(p) M_{2->2} + p^{1/alpha} M_{2->inf};
/// c_high is the fitted constant.
RatioReport sup_norm_moment_check(const MatrixFamily& family, double alpha, std::span<const double> p_grid,
                                  const McPlan& plan);

struct TailExponentFit {
  double exponent = 0.0;   ///< slope of log(-log P) against log t
  double intercept = 0.0;
  std::size_t points = 0;
  double t_min = 0.0;
  double t_max = 0.0;
};

/// Least-squares slope of log(-log S) on log t over thresholds whose
/// survival lies in (0, max_survival] with at least `min_events`
/// exceedances. Throws std::invalid_argument with fewer than two points.
TailExponentFit fit_tail_exponent(const TailCurve& curve, double max_survival = 1e-2, std::size_t min_events = 30);

struct SingleMatrixTailReport {
  TailCurve curve;  ///< empirical survival; `bound` holds the fitted shape
  double gram_frobenius = 0.0;
  double gram_spectral = 0.0;
  double fitted_c1 = 0.0;
  std::size_t anchor = 0;
  /// bound >= ci_low at every threshold past the anchor.
  bool dominated = false;
  std::optional<TailExponentFit> exponent;
};

/// Tail of | ||A xi||^2 - E ||A xi||^2 | against
/// C1 exp(-min{(t/||A^T A||_F)^2, (t/||A^T A||_{2->2})^{alpha/2}}), C1 fitted
/// at the median threshold.
SingleMatrixTailReport single_matrix_tail_check(const DenseMatrix& a, const weibull::AlphaLaw& law,
                                                std::span<const double> thresholds, const McPlan& plan);

struct UniformTailReport {
  TailCurve curve;  ///< empirical survival of the centered supremum; `bound` holds the fitted curve
  chaining::ChainingEstimate gammas;
  chaining::BoundTerms terms;  ///< fitted_C = fitted_C1 = 1
  double L = 0.0;              ///< psi_alpha norm of one coordinate
  double M_2to2 = 0.0;
  std::size_t anchor = 0;
  /// Fitted replacement for C L^2 U1: the curve at tau is the bound at
  /// deviation (tau - fitted_shift) / L^2, matched to the survival at the anchor.
  double fitted_shift = 0.0;
  double min_survival = 0.0;
  /// bound >= ci_low at every threshold past the anchor whose survival is at
  /// least min_survival.
  bool dominated = false;
};

/// Tail of sup_A | ||A xi||^2 - E ||A xi||^2 | against the deviation bound
/// with the U1 shift fitted at the median threshold.
UniformTailReport uniform_tail_check(const MatrixFamily& family, const weibull::AlphaLaw& law,
                                     std::span<const double> thresholds, const McPlan& plan,
                                     double min_survival = 1e-3,
                                     std::optional<chaining::ChainingEstimate> gammas = std::nullopt);

void to_json(nlohmann::json& j, const RatioReport& r);
void to_json(nlohmann::json& j, const ContractionReport& r);
void to_json(nlohmann::json& j, const DecouplingReport& r);
void to_json(nlohmann::json& j, const TailExponentFit& r);
void to_json(nlohmann::json& j, const SingleMatrixTailReport& r);
void to_json(nlohmann::json& j, const UniformTailReport& r);

}  // namespace uhw::chaos
