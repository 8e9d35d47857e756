#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "uhw/core/parallel.hpp"
#include "uhw/core/rng.hpp"
#include "uhw/core/summation.hpp"

namespace uhw {

double Rng::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

MeanEstimate mean_estimate(std::span<const double> values) {
  MeanEstimate est;
  const auto n = values.size();
  if (n == 0) return est;
  est.mean = compensated_sum(values) / static_cast<double>(n);
  if (n < 2) return est;
  CompensatedSum sq;
  for (double v : values) {
    const double d = v - est.mean;
    sq.add(d * d);
  }
  const double var = sq.value() / static_cast<double>(n - 1);
  est.std_error = std::sqrt(var / static_cast<double>(n));
  return est;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task) {
  if (count == 0) return;
  const unsigned pool = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (pool == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::jthread> threads;
  threads.reserve(pool);
  for (unsigned w = 0; w < pool; ++w) threads.emplace_back(worker);
  threads.clear();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> TrialTable::column(std::size_t k) const {
  std::vector<double> out(trials());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = values[t * width + k];
  return out;
}

TrialTable collect_trials(const McPlan& plan, std::size_t width,
                          const std::function<void(Rng&, std::span<double>)>& observe) {
  TrialTable table;
  table.width = width;
  table.values.assign(plan.trials * width, 0.0);
  const std::size_t chunks = (plan.trials + McPlan::kChunk - 1) / McPlan::kChunk;
  parallel_for(chunks, plan.workers, [&](std::size_t c) {
    Rng rng(derive_seed(plan.seed, c));
    const std::size_t begin = c * McPlan::kChunk;
    const std::size_t end = std::min(plan.trials, begin + McPlan::kChunk);
    for (std::size_t t = begin; t < end; ++t) {
      observe(rng, std::span<double>(table.values.data() + t * width, width));
    }
  });
  return table;
}

std::vector<double> collect_scalar(const McPlan& plan, const std::function<double(Rng&)>& statistic) {
  auto table = collect_trials(plan, 1, [&](Rng& rng, std::span<double> out) { out[0] = statistic(rng); });
  return std::move(table.values);
}

}  // namespace uhw

namespace uhw {

LpEstimate lp_norm_estimate(std::span<const double> values, double p) {
  LpEstimate est;
  if (values.empty()) return est;
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return est;
  std::vector<double> powered(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) powered[i] = std::pow(std::abs(values[i]) / scale, p);
  const MeanEstimate m = mean_estimate(powered);
  if (m.mean <= 0.0) return est;
  est.value = scale * std::pow(m.mean, 1.0 / p);
  // d(m^{1/p})/dm = m^{1/p - 1} / p
  est.std_error = scale * std::pow(m.mean, 1.0 / p - 1.0) / p * m.std_error;
  return est;
}

}  // namespace uhw
