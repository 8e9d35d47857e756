#include "uhw/circulant/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uhw/circulant/convolution.hpp"

namespace uhw::circulant {

CirculantOperator::CirculantOperator(Vector z, std::vector<std::size_t> omega)
    : z_(std::move(z)), omega_(std::move(omega)) {
  if (z_.size() == 0) throw std::invalid_argument("circulant operator: empty generator");
  if (omega_.empty()) throw std::invalid_argument("circulant operator: empty selection set");
  for (std::size_t i = 0; i < omega_.size(); ++i) {
    if (omega_[i] >= n()) throw std::invalid_argument("circulant operator: selection index out of range");
    if (i > 0 && omega_[i] <= omega_[i - 1]) {
      throw std::invalid_argument("circulant operator: selection set must be strictly increasing");
    }
  }
}

std::vector<std::size_t> random_support(std::size_t n, std::size_t m, Rng& rng) {
  if (m > n) throw std::invalid_argument("random_support: m exceeds n");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < m; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

Vector random_generator(const weibull::AlphaLaw& law, std::size_t n, Rng& rng) {
  Vector z(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = law.draw(rng);
  return z;
}

Vector phi_apply(const CirculantOperator& op, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != op.n()) throw std::invalid_argument("phi_apply: dimension mismatch");
  const Vector full = circ_convolve(op.z(), x);
  const double scale = 1.0 / std::sqrt(static_cast<double>(op.m()));
  Vector out(static_cast<Eigen::Index>(op.m()));
  for (std::size_t r = 0; r < op.m(); ++r) out[static_cast<Eigen::Index>(r)] = scale * full[static_cast<Eigen::Index>(op.omega()[r])];
  return out;
}

DenseMatrix dense_phi(const CirculantOperator& op) { return build_vx(op.z(), op.omega(), op.n()); }

DenseMatrix build_vx(const Vector& x, const std::vector<std::size_t>& omega, std::size_t n) {
  if (static_cast<std::size_t>(x.size()) != n) throw std::invalid_argument("build_vx: dimension mismatch");
  for (std::size_t j : omega) {
    if (j >= n) throw std::invalid_argument("build_vx: selection index out of range");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(omega.size()));
  const auto ni = static_cast<Eigen::Index>(n);
  DenseMatrix v(static_cast<Eigen::Index>(omega.size()), ni);
  for (std::size_t r = 0; r < omega.size(); ++r) {
    const auto j = static_cast<Eigen::Index>(omega[r]);
    for (Eigen::Index k = 0; k < ni; ++k) v(static_cast<Eigen::Index>(r), k) = scale * x[(j - k + ni) % ni];
  }
  return v;
}

Vector random_sparse_unit(std::size_t n, std::size_t s, Rng& rng) {
  if (s == 0 || s > n) throw std::invalid_argument("random_sparse_unit: need 1 <= s <= n");
  Vector x = Vector::Zero(static_cast<Eigen::Index>(n));
  for (;;) {
    for (std::size_t k : random_support(n, s, rng)) x[static_cast<Eigen::Index>(k)] = rng.normal();
    const double norm = x.norm();
    if (norm > 0.0) return x / norm;
  }
}

MatrixFamily vx_family(const std::vector<std::size_t>& omega, std::size_t n, std::size_t s, std::size_t members,
                       Rng& rng) {
  std::vector<DenseMatrix> mats;
  mats.reserve(members);
  for (std::size_t i = 0; i < members; ++i) mats.push_back(build_vx(random_sparse_unit(n, s, rng), omega, n));
  return MatrixFamily(std::move(mats));
}

EnergyReport expected_energy_check(const CirculantOperator& op, const Vector& x, const weibull::AlphaLaw& law,
                                   const McPlan& plan) {
  if (!law.standardized()) throw std::invalid_argument("expected_energy_check: law must have unit variance");
  if (static_cast<std::size_t>(x.size()) != op.n()) throw std::invalid_argument("expected_energy_check: dimension mismatch");
  EnergyReport report;
  report.target = x.squaredNorm();
  report.trials = plan.trials;
  if (x.isZero(0.0)) return report;
  const auto values = collect_scalar(plan, [&](Rng& rng) {
    const CirculantOperator draw = op.with_generator(random_generator(law, op.n(), rng));
    return phi_apply(draw, x).squaredNorm();
  });
  const MeanEstimate m = mean_estimate(values);
  report.estimate = m.mean;
  report.std_error = m.std_error;
  return report;
}

void to_json(nlohmann::json& j, const CirculantOperator& op) {
  j = nlohmann::json{{"n", op.n()},
                     {"m", op.m()},
                     {"z", std::vector<double>(op.z().data(), op.z().data() + op.z().size())},
                     {"omega", op.omega()}};
}

CirculantOperator operator_from_json(const nlohmann::json& j) {
  const auto z = j.at("z").get<std::vector<double>>();
  auto omega = j.at("omega").get<std::vector<std::size_t>>();
  CirculantOperator op(Eigen::Map<const Vector>(z.data(), static_cast<Eigen::Index>(z.size())), std::move(omega));
  if (j.contains("n") && j.at("n").get<std::size_t>() != op.n()) throw std::invalid_argument("operator json: n disagrees with z");
  if (j.contains("m") && j.at("m").get<std::size_t>() != op.m()) throw std::invalid_argument("operator json: m disagrees with omega");
  return op;
}

}  // namespace uhw::circulant
