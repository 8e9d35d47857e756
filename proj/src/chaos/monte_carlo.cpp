#include "uhw/chaos/monte_carlo.hpp"

#include <stdexcept>

#include "uhw/core/summation.hpp"

namespace uhw::chaos {

TailCurve mc_tail(const Statistic& statistic, std::span<const double> thresholds, const McPlan& plan) {
  if (plan.trials < 100) throw std::invalid_argument("mc_tail: at least 100 trials required");
  const auto samples = collect_scalar(plan, statistic);
  return survival_curve(samples, thresholds, plan.seed);
}

MomentCurve mc_moments(const Statistic& statistic, std::span<const double> p_grid, const McPlan& plan) {
  if (plan.trials < 100) throw std::invalid_argument("mc_moments: at least 100 trials required");
  for (double p : p_grid) {
    if (!(p >= 1.0)) throw std::invalid_argument("mc_moments: every p must be >= 1");
  }
  const auto samples = collect_scalar(plan, statistic);
  MomentCurve curve;
  curve.n_trials = plan.trials;
  curve.seed = plan.seed;
  for (double p : p_grid) {
    const LpEstimate est = lp_norm_estimate(samples, p);
    curve.p_grid.push_back(p);
    curve.lp_norms.push_back(est.value);
    curve.std_errors.push_back(est.std_error);
  }
  return curve;
}

}  // namespace uhw::chaos
