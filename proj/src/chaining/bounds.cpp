#include "uhw/chaining/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "uhw/chaining/nets.hpp"

namespace uhw::chaining {

ChainingEstimate chaining_estimate(const MatrixFamily& family, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("chaining_estimate: alpha must lie in (0, 1]");
  ChainingEstimate e;
  e.alpha = alpha;
  e.gamma2 = entropy_gamma(family, DistanceTag::spectral, 2.0);
  e.gamma_alpha = entropy_gamma(family, DistanceTag::two_to_inf, alpha);
  return e;
}

namespace {

void check_dsn(std::size_t s, std::size_t m, std::size_t n) {
  if (s < 1 || s > n) throw std::invalid_argument("dsn bounds: need 1 <= s <= n");
  if (m < 1) throw std::invalid_argument("dsn bounds: need m >= 1");
}

}  // namespace

CoverBound dsn_cover_bound(std::size_t s, std::size_t m, std::size_t n, double u) {
  check_dsn(s, m, n);
  if (!(u > 0.0)) throw std::invalid_argument("dsn_cover_bound: u must be positive");
  const double sd = static_cast<double>(s);
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  const double boundary = 1.0 / std::sqrt(md);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  CoverBound b;
  b.large_regime = u >= boundary ? (sd / md) * std::pow(std::log(nd) / u, 2.0) : nan;
  b.small_regime = u <= boundary ? sd * std::log(std::exp(1.0) * nd / (sd * u)) : nan;
  b.single_ball = u >= std::sqrt(sd / md);
  if (b.single_ball) {
    b.value = 0.0;
  } else if (u == boundary) {
    b.value = std::min(b.large_regime, b.small_regime);
  } else {
    b.value = u > boundary ? b.large_regime : b.small_regime;
  }
  return b;
}

DsnGammaBound dsn_gamma_bound(std::size_t s, std::size_t m, std::size_t n, double alpha) {
  check_dsn(s, m, n);
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("dsn_gamma_bound: alpha must lie in (0, 1]");
  const double sd = static_cast<double>(s);
  const double md = static_cast<double>(m);
  const double log_n = std::log(static_cast<double>(n));
  DsnGammaBound b;
  b.gamma2 = std::sqrt(sd / md) * std::log(sd) * log_n;
  b.gamma_alpha = std::pow(sd, 1.0 / alpha) / std::sqrt(md) * std::pow(log_n, 2.0 / alpha);
  b.gamma2_degenerate = s == 1;
  return b;
}

BoundTerms bound_terms(const MatrixFamily& family, const ChainingEstimate& estimates) {
  if (estimates.beta_tag != "inf") throw std::invalid_argument("bound_terms: estimates must use beta = inf");
  const FamilyNorms& fn = family.norms();
  BoundTerms t;
  t.Gamma = estimates.gamma2 + estimates.gamma_alpha;
  t.M_F = fn.frobenius;
  t.M_2to2 = fn.spectral;
  t.M_2toInf = fn.two_to_inf;
  t.sup_gram_frobenius = fn.gram_frobenius;
  t.U1 = t.Gamma * (t.Gamma + t.M_F);
  t.U2 = t.M_2to2 * t.Gamma + t.sup_gram_frobenius;
  t.U3 = t.M_2toInf * t.Gamma;
  return t;
}

double theorem1_value(const BoundTerms& terms, double alpha, double M_2to2, double t) {
  const double cap = std::min(1.0, terms.fitted_C1);
  if (t <= 0.0) return cap;
  double exponent = std::numeric_limits<double>::infinity();
  if (terms.U2 > 0.0) exponent = std::min(exponent, std::pow(t / terms.U2, 2.0));
  if (terms.U3 > 0.0) exponent = std::min(exponent, std::pow(t / terms.U3, alpha));
  const double m2 = M_2to2 * M_2to2;
  if (m2 > 0.0) exponent = std::min(exponent, std::pow(t / m2, alpha / 2.0));
  return std::min(1.0, terms.fitted_C1 * std::exp(-exponent));
}

TailCurve theorem1_curve(const BoundTerms& terms, double L, double alpha, double M_2to2,
                         std::span<const double> thresholds) {
  (void)L;  // the deviation axis is already in units beyond C L^2 U1
  TailCurve curve;
  for (double t : thresholds) {
    curve.thresholds.push_back(t);
    curve.bound.push_back(theorem1_value(terms, alpha, M_2to2, t));
  }
  return curve;
}

double theorem1_bound_at(const BoundTerms& terms, double L, double alpha, double M_2to2, double tau) {
  const double scale = terms.fitted_C * L * L;
  if (!(scale > 0.0)) throw std::invalid_argument("theorem1_bound_at: C L^2 must be positive");
  return theorem1_value(terms, alpha, M_2to2, tau / scale - terms.U1);
}

double theorem1_regime_inverse(const BoundTerms& terms, double alpha, double M_2to2, double level) {
  if (level <= 0.0) return 0.0;
  double t = 0.0;
  if (terms.U2 > 0.0) t = std::max(t, terms.U2 * std::sqrt(level));
  if (terms.U3 > 0.0) t = std::max(t, terms.U3 * std::pow(level, 1.0 / alpha));
  const double m2 = M_2to2 * M_2to2;
  if (m2 > 0.0) t = std::max(t, m2 * std::pow(level, 2.0 / alpha));
  return t;
}

void to_json(nlohmann::json& j, const ChainingEstimate& e) {
  j = nlohmann::json{{"gamma2", e.gamma2},         {"gamma_alpha", e.gamma_alpha}, {"alpha", e.alpha},
                     {"beta_tag", e.beta_tag},     {"method_tag", e.method_tag}};
}

void to_json(nlohmann::json& j, const BoundTerms& t) {
  j = nlohmann::json{{"U1", t.U1},
                     {"U2", t.U2},
                     {"U3", t.U3},
                     {"Gamma", t.Gamma},
                     {"M_F", t.M_F},
                     {"M_2to2", t.M_2to2},
                     {"M_2toInf", t.M_2toInf},
                     {"sup_gram_frobenius", t.sup_gram_frobenius},
                     {"fitted_C", t.fitted_C},
                     {"fitted_C1", t.fitted_C1},
                     {"method_tag", "entropy_integral"}};
}

}  // namespace uhw::chaining
