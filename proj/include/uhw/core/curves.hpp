#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace uhw {

/// Survival estimates P{X > t} on an increasing threshold grid, with 95%
/// Clopper-Pearson intervals. `bound` optionally carries a theoretical
/// curve evaluated on the same thresholds (empty when absent).
struct TailCurve {
  std::vector<double> thresholds;
  std::vector<double> survival;
  std::vector<double> ci_low;
  std::vector<double> ci_high;
  std::vector<double> bound;
  std::size_t n_trials = 0;
  std::uint64_t seed = 0;
};

/// L_p norm estimates on a p grid with delta-method standard errors.
struct MomentCurve {
  std::vector<double> p_grid;
  std::vector<double> lp_norms;
  std::vector<double> std_errors;
  std::size_t n_trials = 0;
  std::uint64_t seed = 0;
};

/// Empirical survival of `samples` at each threshold. Thresholds must be
/// strictly increasing.
TailCurve survival_curve(std::span<const double> samples, std::span<const double> thresholds, std::uint64_t seed);

/// Columns threshold,estimate,ci_low,ci_high,n_trials,seed[,bound].
void write_tail_csv(std::ostream& out, const TailCurve& curve);
/// Columns p,estimate,ci_low,ci_high,n_trials,seed (ci = estimate +- 1.96 SE).
void write_moment_csv(std::ostream& out, const MomentCurve& curve);

}  // namespace uhw
