#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uhw/weibull/alpha_law.hpp"

namespace uhw::weibull {

struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;
  AlphaLaw law{1.0};
};

/// Draws `count` i.i.d. samples from a single Rng(seed) stream.
SampleBatch sample_ws(const AlphaLaw& law, std::size_t count, std::uint64_t seed);

/// E|xi|^p = (p/alpha) Gamma(p/alpha) for xi ~ W_s(alpha), via log-Gamma.
/// Throws NumericalError when the result is not representable.
double ws_moment(double alpha, double p);
double ws_log_moment(double alpha, double p);

struct MomentScalingFit {
  double theta1 = 0.0;  ///< min over the grid of ||xi||_p / p^{1/alpha}
  double theta2 = 0.0;  ///< max over the grid
  double p_max = 0.0;
  /// False when count < 1e3 * exp(p_max * max(1, 1/alpha)).
  bool reliable = true;
};

/// Empirical bracket of ||xi||_{L_p} / p^{1/alpha} over p_grid (each p >= 2).
MomentScalingFit moment_scaling_fit(const SampleBatch& batch, std::span<const double> p_grid);

/// The same bracket evaluated from exact moments of `law`.
MomentScalingFit moment_scaling_exact(const AlphaLaw& law, std::span<const double> p_grid);

/// inf{t > 0 : mean exp(|xi|^alpha / t^alpha) <= 2} over the batch.
double psi_alpha_estimate(const SampleBatch& batch);

/// Kolmogorov-Smirnov distance between the empirical law of |xi| and the
/// exact CDF of |xi| under batch.law.
double ks_distance_abs(const SampleBatch& batch);

}  // namespace uhw::weibull
