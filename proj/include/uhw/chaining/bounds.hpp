#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "uhw/core/curves.hpp"
#include "uhw/norms/family.hpp"

namespace uhw::chaining {

/// Entropy-integral surrogates for gamma_2(family, l2->l2) and
/// gamma_alpha(family, l2->l_inf).
struct ChainingEstimate {
  double gamma2 = 0.0;
  double gamma_alpha = 0.0;
  double alpha = 1.0;
  std::string beta_tag = "inf";
  std::string method_tag = "entropy_integral";

  double Gamma() const { return gamma2 + gamma_alpha; }
};

ChainingEstimate chaining_estimate(const MatrixFamily& family, double alpha);

/// Covering-number bound for {V_x : x in D_{s,n}} under l2->l2, unit
/// leading constants, natural logarithms.
struct CoverBound {
  double value = 0.0;        ///< bound used downstream
  double large_regime = 0.0; ///< (s/m)(log n / u)^2, NaN when u < 1/sqrt(m)
  double small_regime = 0.0; ///< s log(e n / (s u)), NaN when u > 1/sqrt(m)
  bool single_ball = false;  ///< u >= sqrt(s/m): the zero matrix covers everything
};

CoverBound dsn_cover_bound(std::size_t s, std::size_t m, std::size_t n, double u);

struct DsnGammaBound {
  double gamma2 = 0.0;       ///< sqrt(s/m) log s log n (vanishes at s = 1)
  double gamma_alpha = 0.0;  ///< s^{1/alpha} / sqrt(m) * log^{2/alpha} n
  bool gamma2_degenerate = false;
};

DsnGammaBound dsn_gamma_bound(std::size_t s, std::size_t m, std::size_t n, double alpha);

/// Deviation-bound terms for the l_inf instantiation.
struct BoundTerms {
  double U1 = 0.0;
  double U2 = 0.0;
  double U3 = 0.0;
  double Gamma = 0.0;
  double M_F = 0.0;
  double M_2to2 = 0.0;
  double M_2toInf = 0.0;
  double sup_gram_frobenius = 0.0;
  double fitted_C = 1.0;
  double fitted_C1 = 1.0;
};

/// U1 = G (G + M_F), U2 = M_{2->2} G + sup ||A^T A||_F, U3 = M_{2->inf} G,
/// with G = gamma2 + gamma_alpha.
BoundTerms bound_terms(const MatrixFamily& family, const ChainingEstimate& estimates);

/// exp(-min{(t/U2)^2, (t/U3)^alpha, (t/M^2)^{alpha/2}}) scaled by C1 and
/// capped at 1. Regimes whose scale vanishes are dropped. t is the deviation
/// beyond C L^2 U1; t <= 0 gives min(1, C1).
double theorem1_value(const BoundTerms& terms, double alpha, double M_2to2, double t);

/// theorem1_value on a deviation grid; the curve's `bound` column carries the
/// values and `survival` is left empty.
TailCurve theorem1_curve(const BoundTerms& terms, double L, double alpha, double M_2to2,
                         std::span<const double> thresholds);

/// Bound on P{sup > tau}: maps tau to t = tau / (C L^2) - U1.
double theorem1_bound_at(const BoundTerms& terms, double L, double alpha, double M_2to2, double tau);

/// Inverse of the regime exponent: the smallest t >= 0 with
/// min{(t/U2)^2, (t/U3)^alpha, (t/M^2)^{alpha/2}} >= level.
double theorem1_regime_inverse(const BoundTerms& terms, double alpha, double M_2to2, double level);

void to_json(nlohmann::json& j, const ChainingEstimate& e);
void to_json(nlohmann::json& j, const BoundTerms& t);

}  // namespace uhw::chaining
