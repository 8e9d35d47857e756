#pragma once

#include <cstdint>

#include "uhw/core/rng.hpp"

namespace uhw::weibull {

/// Symmetric Weibull law W_s(alpha): -log P{|xi| > x} = x^alpha, 0 < alpha <= 1.
///
/// With `standardized` set, samples are divided by sqrt(variance) so the law
/// has unit second moment.
class AlphaLaw {
 public:
  /// Throws std::invalid_argument unless 0 < alpha <= 1.
  explicit AlphaLaw(double alpha, bool standardized = false);

  double alpha() const noexcept { return alpha_; }
  bool standardized() const noexcept { return standardized_; }

  /// Second moment of the raw law, (2/alpha) Gamma(2/alpha).
  double raw_variance() const noexcept { return raw_variance_; }
  /// Second moment of the emitted samples (1 when standardized).
  double variance() const noexcept { return standardized_ ? 1.0 : raw_variance_; }
  /// Divisor applied to raw samples.
  double scale_divisor() const noexcept;

  /// psi_alpha norm of the emitted samples. For the raw law |xi|^alpha is
  /// Exp(1), so E exp(|xi|^alpha / t^alpha) = 1/(1 - t^-alpha) and the norm
  /// is 2^{1/alpha}.
  double psi_scale() const noexcept;

  double draw(Rng& rng) const;

  /// P{|xi| <= x} of the emitted samples.
  double abs_cdf(double x) const;
  double abs_survival(double x) const;

  /// E|xi|^p of the emitted samples.
  double moment(double p) const;

  AlphaLaw raw() const { return AlphaLaw(alpha_, false); }
  AlphaLaw as_standardized() const { return AlphaLaw(alpha_, true); }

  friend bool operator==(const AlphaLaw&, const AlphaLaw&) = default;

 private:
  double alpha_;
  bool standardized_;
  double raw_variance_;
};

/// Inverse-CDF map for the raw law: sign * (-log u)^{1/alpha}.
double ws_from_uniform(double alpha, double u, bool positive);

}  // namespace uhw::weibull
