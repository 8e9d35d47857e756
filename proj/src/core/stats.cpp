#include "uhw/core/stats.hpp"

#include <boost/math/distributions/beta.hpp>
#include <stdexcept>

namespace uhw {

Interval clopper_pearson(std::size_t successes, std::size_t trials, double confidence) {
  if (trials == 0) throw std::invalid_argument("clopper_pearson: no trials");
  if (successes > trials) throw std::invalid_argument("clopper_pearson: successes exceed trials");
  const double tail = 0.5 * (1.0 - confidence);
  const auto k = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  Interval ci;
  if (successes > 0) ci.low = boost::math::quantile(boost::math::beta_distribution<>(k, n - k + 1.0), tail);
  if (successes < trials) ci.high = boost::math::quantile(boost::math::beta_distribution<>(k + 1.0, n - k), 1.0 - tail);
  return ci;
}

}  // namespace uhw

#include <cstdio>

#include "uhw/core/format.hpp"

namespace uhw {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace uhw
