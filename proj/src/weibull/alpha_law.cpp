#include "uhw/weibull/alpha_law.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "uhw/core/error.hpp"
#include "uhw/weibull/sampling.hpp"

namespace uhw::weibull {

AlphaLaw::AlphaLaw(double alpha, bool standardized) : alpha_(alpha), standardized_(standardized) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  try {
    raw_variance_ = ws_moment(alpha_, 2.0);
  } catch (const NumericalError&) {
    if (standardized_) throw;
    raw_variance_ = std::numeric_limits<double>::infinity();
  }
}

double AlphaLaw::scale_divisor() const noexcept { return standardized_ ? std::sqrt(raw_variance_) : 1.0; }

double AlphaLaw::psi_scale() const noexcept { return std::pow(2.0, 1.0 / alpha_) / scale_divisor(); }

double AlphaLaw::draw(Rng& rng) const {
  const std::uint64_t word = rng.bits();
  const double u = (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
  return ws_from_uniform(alpha_, u, (word & 1u) == 0) / scale_divisor();
}

double AlphaLaw::abs_survival(double x) const {
  if (x <= 0.0) return 1.0;
  return std::exp(-std::pow(x * scale_divisor(), alpha_));
}

double AlphaLaw::abs_cdf(double x) const {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-std::pow(x * scale_divisor(), alpha_));
}

double AlphaLaw::moment(double p) const { return ws_moment(alpha_, p) / std::pow(scale_divisor(), p); }

double ws_from_uniform(double alpha, double u, bool positive) {
  const double magnitude = std::pow(-std::log(u), 1.0 / alpha);
  return positive ? magnitude : -magnitude;
}

}  // namespace uhw::weibull
