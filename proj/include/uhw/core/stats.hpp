#pragma once

#include <cstddef>

namespace uhw {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Exact binomial (Clopper-Pearson) interval for `successes` out of `trials`
/// at the given two-sided confidence level.
Interval clopper_pearson(std::size_t successes, std::size_t trials, double confidence = 0.95);

}  // namespace uhw
