#include "uhw/weibull/sampling.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "uhw/core/error.hpp"
#include "uhw/core/summation.hpp"

namespace uhw::weibull {

SampleBatch sample_ws(const AlphaLaw& law, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("sample_ws: count must be >= 1");
  SampleBatch batch{std::vector<double>(count), seed, law};
  Rng rng(seed);
  for (auto& v : batch.values) v = law.draw(rng);
  return batch;
}

double ws_log_moment(double alpha, double p) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("ws_moment: alpha must lie in (0, 1]");
  if (!(p >= 1.0)) throw std::invalid_argument("ws_moment: p must be >= 1");
  const double q = p / alpha;
  return std::log(q) + std::lgamma(q);
}

double ws_moment(double alpha, double p) {
  const double log_value = ws_log_moment(alpha, p);
  if (log_value > std::log(DBL_MAX)) {
    throw NumericalError("ws_moment overflows for alpha=" + std::to_string(alpha) + ", p=" + std::to_string(p));
  }
  return std::exp(log_value);
}

namespace {

void check_grid(std::span<const double> p_grid) {
  if (p_grid.empty()) throw std::invalid_argument("moment_scaling: empty p grid");
  for (double p : p_grid) {
    if (!(p >= 2.0)) throw std::invalid_argument("moment_scaling: every p must be >= 2");
  }
}

}  // namespace

MomentScalingFit moment_scaling_fit(const SampleBatch& batch, std::span<const double> p_grid) {
  check_grid(p_grid);
  const double alpha = batch.law.alpha();
  MomentScalingFit fit;
  fit.p_max = *std::max_element(p_grid.begin(), p_grid.end());
  fit.theta1 = INFINITY;
  fit.theta2 = 0.0;
  for (double p : p_grid) {
    const double ratio = lp_norm_estimate(batch.values, p).value / std::pow(p, 1.0 / alpha);
    fit.theta1 = std::min(fit.theta1, ratio);
    fit.theta2 = std::max(fit.theta2, ratio);
  }
  const double needed_log = std::log(1e3) + fit.p_max * std::max(1.0, 1.0 / alpha);
  fit.reliable = std::log(static_cast<double>(batch.values.size())) >= needed_log;
  return fit;
}

MomentScalingFit moment_scaling_exact(const AlphaLaw& law, std::span<const double> p_grid) {
  check_grid(p_grid);
  MomentScalingFit fit;
  fit.p_max = *std::max_element(p_grid.begin(), p_grid.end());
  fit.theta1 = INFINITY;
  for (double p : p_grid) {
    const double norm = std::exp((ws_log_moment(law.alpha(), p) - p * std::log(law.scale_divisor())) / p);
    const double ratio = norm / std::pow(p, 1.0 / law.alpha());
    fit.theta1 = std::min(fit.theta1, ratio);
    fit.theta2 = std::max(fit.theta2, ratio);
  }
  return fit;
}

double psi_alpha_estimate(const SampleBatch& batch) {
  if (batch.values.empty()) throw std::invalid_argument("psi_alpha_estimate: empty batch");
  const double alpha = batch.law.alpha();
  std::vector<double> powered(batch.values.size());
  double top = 0.0;
  for (std::size_t i = 0; i < powered.size(); ++i) {
    powered[i] = std::pow(std::abs(batch.values[i]), alpha);
    top = std::max(top, powered[i]);
  }
  if (top == 0.0) return 0.0;

  // h(s) = log mean exp(s v) - log 2 is increasing in s = t^{-alpha}.
  const double log_n = std::log(static_cast<double>(powered.size()));
  auto h = [&](double s) {
    CompensatedSum acc;
    for (double v : powered) acc.add(std::exp(s * (v - top)));
    return s * top + std::log(acc.value()) - log_n - std::log(2.0);
  };
  double lo = 0.0;
  double hi = std::log(2.0) / top;
  while (h(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::pow(0.5 * (lo + hi), -1.0 / alpha);
}

double ks_distance_abs(const SampleBatch& batch) {
  std::vector<double> sorted(batch.values.size());
  std::transform(batch.values.begin(), batch.values.end(), sorted.begin(), [](double v) { return std::abs(v); });
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = batch.law.abs_cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace uhw::weibull
