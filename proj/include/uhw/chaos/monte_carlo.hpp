#pragma once

#include <functional>
#include <span>

#include "uhw/core/curves.hpp"
#include "uhw/core/parallel.hpp"
#include "uhw/core/rng.hpp"

namespace uhw::chaos {

using Statistic = std::function<double(Rng&)>;

/// Empirical survival of `statistic` with exact binomial 95% intervals.
/// Requires plan.trials >= 100.
TailCurve mc_tail(const Statistic& statistic, std::span<const double> thresholds, const McPlan& plan);

/// Plug-in L_p norms of `statistic` with delta-method standard errors.
MomentCurve mc_moments(const Statistic& statistic, std::span<const double> p_grid, const McPlan& plan);

}  // namespace uhw::chaos
