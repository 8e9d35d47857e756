#include "uhw/core/curves.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "uhw/core/format.hpp"
#include "uhw/core/stats.hpp"

namespace uhw {

TailCurve survival_curve(std::span<const double> samples, std::span<const double> thresholds, std::uint64_t seed) {
  if (samples.empty()) throw std::invalid_argument("survival_curve: no samples");
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > thresholds[i - 1])) throw std::invalid_argument("survival_curve: thresholds must increase");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  TailCurve curve;
  curve.n_trials = samples.size();
  curve.seed = seed;
  for (double t : thresholds) {
    const auto above = static_cast<std::size_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t));
    const Interval ci = clopper_pearson(above, samples.size());
    curve.thresholds.push_back(t);
    curve.survival.push_back(static_cast<double>(above) / static_cast<double>(samples.size()));
    curve.ci_low.push_back(ci.low);
    curve.ci_high.push_back(ci.high);
  }
  return curve;
}

void write_tail_csv(std::ostream& out, const TailCurve& curve) {
  const bool with_bound = !curve.bound.empty();
  out << "threshold,estimate,ci_low,ci_high,n_trials,seed" << (with_bound ? ",bound" : "") << '\n';
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    out << format_double(curve.thresholds[i]) << ',' << format_double(curve.survival[i]) << ','
        << format_double(curve.ci_low[i]) << ',' << format_double(curve.ci_high[i]) << ',' << curve.n_trials << ','
        << curve.seed;
    if (with_bound) out << ',' << format_double(curve.bound[i]);
    out << '\n';
  }
}

void write_moment_csv(std::ostream& out, const MomentCurve& curve) {
  out << "p,estimate,ci_low,ci_high,n_trials,seed\n";
  for (std::size_t i = 0; i < curve.p_grid.size(); ++i) {
    const double half = 1.96 * curve.std_errors[i];
    out << format_double(curve.p_grid[i]) << ',' << format_double(curve.lp_norms[i]) << ','
        << format_double(curve.lp_norms[i] - half) << ',' << format_double(curve.lp_norms[i] + half) << ','
        << curve.n_trials << ',' << curve.seed << '\n';
  }
}

}  // namespace uhw
