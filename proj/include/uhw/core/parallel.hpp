#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "uhw/core/rng.hpp"
#include "uhw/core/summation.hpp"

namespace uhw {

/// Runs task(i) for i in [0, count) on a fixed pool of `workers` threads.
/// Tasks are claimed from a shared counter; callers write results into
/// per-index slots so the outcome is independent of scheduling.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task);

/// Monte Carlo plan shared by every simulation routine.
///
/// Trials are cut into fixed chunks of kChunk; chunk c draws from
/// Rng(derive_seed(seed, c)). Chunk boundaries do not depend on `workers`, so
/// results are bit-identical for any worker count.
struct McPlan {
  static constexpr std::size_t kChunk = 4096;

  std::size_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Row-major table of per-trial observations, `width` values per trial.
struct TrialTable {
  std::size_t width = 0;
  std::vector<double> values;

  std::size_t trials() const { return width == 0 ? 0 : values.size() / width; }
  std::span<const double> row(std::size_t t) const { return {values.data() + t * width, width}; }
  std::vector<double> column(std::size_t k) const;
};

/// Fills a TrialTable by calling observe(rng, out_row) once per trial.
TrialTable collect_trials(const McPlan& plan, std::size_t width,
                          const std::function<void(Rng&, std::span<double>)>& observe);

/// Scalar convenience wrapper around collect_trials.
std::vector<double> collect_scalar(const McPlan& plan, const std::function<double(Rng&)>& statistic);

}  // namespace uhw
