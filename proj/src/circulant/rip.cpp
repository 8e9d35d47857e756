#include "uhw/circulant/rip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "uhw/circulant/operator.hpp"
#include "uhw/core/format.hpp"
#include "uhw/core/parallel.hpp"
#include "uhw/core/stats.hpp"

namespace uhw::circulant {

std::string to_string(RipMethod method) {
  return method == RipMethod::exact_enumeration ? "exact_enumeration" : "support_sampling";
}

std::size_t binomial(std::size_t n, std::size_t s) {
  if (s > n) return 0;
  s = std::min(s, n - s);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= s; ++i) {
    const std::size_t factor = n - s + i;
    if (result > std::numeric_limits<std::size_t>::max() / factor) return std::numeric_limits<std::size_t>::max();
    result = result * factor / i;  // exact: result * factor is divisible by i
  }
  return result;
}

double support_deviation(const DenseMatrix& gram, const std::vector<std::size_t>& support) {
  const auto s = static_cast<Eigen::Index>(support.size());
  if (s == 1) {
    const auto k = static_cast<Eigen::Index>(support[0]);
    return std::abs(gram(k, k) - 1.0);
  }
  DenseMatrix minor(s, s);
  for (Eigen::Index a = 0; a < s; ++a) {
    for (Eigen::Index b = 0; b < s; ++b) {
      minor(a, b) = gram(static_cast<Eigen::Index>(support[a]), static_cast<Eigen::Index>(support[b]));
    }
  }
  minor -= DenseMatrix::Identity(s, s);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(minor, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

void check_spec(const DenseMatrix& phi, const SparseSpec& spec) {
  validate_matrix(phi);
  if (spec.n != static_cast<std::size_t>(phi.cols())) throw std::invalid_argument("rip: spec.n must equal column count");
  if (spec.s < 1 || spec.s > spec.n) throw std::invalid_argument("rip: sparsity must satisfy 1 <= s <= n");
}

// Advances a sorted combination of [0, n) to its lexicographic successor.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t s = c.size();
  for (std::size_t i = s; i-- > 0;) {
    if (c[i] < n - s + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

RipEstimate rip_exact(const DenseMatrix& phi, const SparseSpec& spec, std::size_t cap) {
  check_spec(phi, spec);
  const std::size_t total = binomial(spec.n, spec.s);
  if (total > cap) {
    throw std::invalid_argument("rip_exact: " + std::to_string(total) + " supports exceed the enumeration cap of " +
                                std::to_string(cap) + "; use rip_sampled");
  }
  const DenseMatrix gram = phi.transpose() * phi;
  RipEstimate est;
  est.method = RipMethod::exact_enumeration;
  est.delta = -1.0;
  std::vector<std::size_t> support(spec.s);
  std::iota(support.begin(), support.end(), std::size_t{0});
  do {
    const double d = support_deviation(gram, support);
    ++est.supports_examined;
    if (d > est.delta) {
      est.delta = d;
      est.argmax_support = support;
    }
  } while (next_combination(support, spec.n));
  return est;
}

RipEstimate rip_sampled(const DenseMatrix& phi, const SparseSpec& spec, std::size_t n_supports, std::uint64_t seed) {
  check_spec(phi, spec);
  if (n_supports < 1) throw std::invalid_argument("rip_sampled: n_supports must be >= 1");
  const DenseMatrix gram = phi.transpose() * phi;
  const std::size_t target = std::min(n_supports, binomial(spec.n, spec.s));
  RipEstimate est;
  est.method = RipMethod::support_sampling;
  est.delta = -1.0;
  std::set<std::vector<std::size_t>> seen;
  Rng rng(seed);
  while (seen.size() < target) {
    auto support = random_support(spec.n, spec.s, rng);
    if (!seen.insert(support).second) continue;
    const double d = support_deviation(gram, support);
    if (d > est.delta) {
      est.delta = d;
      est.argmax_support = std::move(support);
    }
  }
  est.supports_examined = seen.size();
  return est;
}

std::vector<RipExperimentRow> rip_experiment(const RipExperimentParams& params) {
  if (params.m_grid.empty()) throw std::invalid_argument("rip_experiment: empty m grid");
  if (params.trials == 0) throw std::invalid_argument("rip_experiment: trials must be >= 1");
  for (std::size_t m : params.m_grid) {
    if (m < 1 || m > params.n) throw std::invalid_argument("rip_experiment: every m must satisfy 1 <= m <= n");
  }
  const weibull::AlphaLaw law(params.alpha, true);
  const SparseSpec spec{params.s, params.n};
  const bool exact = binomial(params.n, params.s) <= params.enumeration_cap;

  const std::size_t cells = params.m_grid.size();
  std::vector<std::vector<std::size_t>> omegas(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    Rng rng(derive_seed(params.seed, c));
    omegas[c] = random_support(params.n, params.m_grid[c], rng);
  }

  std::vector<unsigned char> success(cells * params.trials, 0);
  parallel_for(success.size(), params.workers, [&](std::size_t task) {
    const std::size_t c = task / params.trials;
    const std::size_t t = task % params.trials;
    const std::uint64_t trial_seed = derive_seed(derive_seed(params.seed, c), t);
    Rng rng(trial_seed);
    const CirculantOperator op(random_generator(law, params.n, rng), omegas[c]);
    const DenseMatrix phi = dense_phi(op);
    const RipEstimate est = exact ? rip_exact(phi, spec, params.enumeration_cap)
                                  : rip_sampled(phi, spec, params.enumeration_cap, derive_seed(trial_seed, 0));
    success[task] = est.delta <= params.delta_target ? 1 : 0;
  });

  std::vector<RipExperimentRow> rows;
  for (std::size_t c = 0; c < cells; ++c) {
    RipExperimentRow row;
    row.alpha = params.alpha;
    row.n = params.n;
    row.m = params.m_grid[c];
    row.s = params.s;
    row.delta_target = params.delta_target;
    row.trials = params.trials;
    row.successes = static_cast<std::size_t>(
        std::count(success.begin() + static_cast<std::ptrdiff_t>(c * params.trials),
                   success.begin() + static_cast<std::ptrdiff_t>((c + 1) * params.trials), 1));
    const Interval ci = clopper_pearson(row.successes, row.trials);
    row.ci_low = ci.low;
    row.ci_high = ci.high;
    row.master_seed = params.seed;
    rows.push_back(row);
  }
  return rows;
}

std::string rip_rows_csv(const std::vector<RipExperimentRow>& rows) {
  std::ostringstream out;
  out << "alpha,n,m,s,delta_target,trials,successes,ci_low,ci_high,master_seed\n";
  for (const auto& r : rows) {
    out << format_double(r.alpha) << ',' << r.n << ',' << r.m << ',' << r.s << ',' << format_double(r.delta_target)
        << ',' << r.trials << ',' << r.successes << ',' << format_double(r.ci_low) << ',' << format_double(r.ci_high)
        << ',' << r.master_seed << '\n';
  }
  return out.str();
}

}  // namespace uhw::circulant
