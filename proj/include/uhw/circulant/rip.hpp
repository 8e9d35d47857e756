#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "uhw/norms/matrix.hpp"

namespace uhw::circulant {

struct SparseSpec {
  std::size_t s = 1;
  std::size_t n = 1;
};

enum class RipMethod { exact_enumeration, support_sampling };

std::string to_string(RipMethod method);

struct RipEstimate {
  double delta = 0.0;
  RipMethod method = RipMethod::exact_enumeration;
  std::size_t supports_examined = 0;
  std::vector<std::size_t> argmax_support;
};

inline constexpr std::size_t kEnumerationCap = 100000;

/// Number of size-s subsets of n, saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t s);

/// ||Phi_S^T Phi_S - I||_{2->2} for one sorted support, read from the full
/// Gram matrix Phi^T Phi.
double support_deviation(const DenseMatrix& gram, const std::vector<std::size_t>& support);

/// delta_s as the maximum of support_deviation over every s-subset of
/// columns. Throws std::invalid_argument if binomial(n, s) exceeds `cap`;
/// use rip_sampled beyond it.
RipEstimate rip_exact(const DenseMatrix& phi, const SparseSpec& spec, std::size_t cap = kEnumerationCap);

/// Maximum over min(n_supports, binomial(n, s)) distinct uniformly sampled
/// supports. Always a lower bound on delta_s.
RipEstimate rip_sampled(const DenseMatrix& phi, const SparseSpec& spec, std::size_t n_supports, std::uint64_t seed);

struct RipExperimentParams {
  double alpha = 1.0;
  std::size_t n = 64;
  std::vector<std::size_t> m_grid;
  std::size_t s = 2;
  double delta_target = 0.5;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::size_t enumeration_cap = kEnumerationCap;
};

struct RipExperimentRow {
  double alpha = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t s = 0;
  double delta_target = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t master_seed = 0;

  double success_rate() const { return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials); }
};

/// For each m, draws omega once (cell seed derive_seed(seed, cell)) and
/// counts generator draws with delta_s <= delta_target. Generators are
/// standardized W_s(alpha) vectors.
std::vector<RipExperimentRow> rip_experiment(const RipExperimentParams& params);

/// Header alpha,n,m,s,delta_target,trials,successes,ci_low,ci_high,master_seed.
std::string rip_rows_csv(const std::vector<RipExperimentRow>& rows);

}  // namespace uhw::circulant
