#pragma once

#include <cmath>
#include <span>

namespace uhw {

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) noexcept {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

/// Mean and standard error of the mean (sample standard deviation / sqrt(N)).
struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanEstimate mean_estimate(std::span<const double> values);

}  // namespace uhw

namespace uhw {

/// Plug-in estimate of (E|X|^p)^{1/p} with a delta-method standard error.
/// Values are rescaled by max|X| before powering so large p cannot overflow.
struct LpEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

LpEstimate lp_norm_estimate(std::span<const double> values, double p);

}  // namespace uhw
