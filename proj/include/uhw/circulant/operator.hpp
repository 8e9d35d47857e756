#pragma once

#include <cstddef>
#include <vector>

#include "json.hpp"

#include "uhw/core/parallel.hpp"
#include "uhw/core/rng.hpp"
#include "uhw/norms/family.hpp"
#include "uhw/norms/matrix.hpp"
#include "uhw/weibull/alpha_law.hpp"

namespace uhw::circulant {

/// Partial circulant operator Phi = (1/sqrt(m)) R_Omega H_z with
/// H_{jk} = z_{(j - k) mod n}.
class CirculantOperator {
 public:
  /// Throws std::invalid_argument unless omega is strictly increasing, inside
  /// [0, n) and nonempty.
  CirculantOperator(Vector z, std::vector<std::size_t> omega);

  std::size_t n() const noexcept { return static_cast<std::size_t>(z_.size()); }
  std::size_t m() const noexcept { return omega_.size(); }
  const Vector& z() const noexcept { return z_; }
  const std::vector<std::size_t>& omega() const noexcept { return omega_; }

  CirculantOperator with_generator(Vector z) const { return CirculantOperator(std::move(z), omega_); }

 private:
  Vector z_;
  std::vector<std::size_t> omega_;
};

/// m indices drawn uniformly without replacement from [0, n), sorted.
std::vector<std::size_t> random_support(std::size_t n, std::size_t m, Rng& rng);

/// Generator with i.i.d. entries from `law`.
Vector random_generator(const weibull::AlphaLaw& law, std::size_t n, Rng& rng);

/// (1/sqrt(m)) (z * x) restricted to omega.
Vector phi_apply(const CirculantOperator& op, const Vector& x);

/// Explicit m x n matrix of the operator.
DenseMatrix dense_phi(const CirculantOperator& op);

/// The m x n matrix V_x with V_x eta = (1/sqrt(m)) R_Omega (x * eta); the row
/// for selected index j holds x_{(j - k) mod n} / sqrt(m) in column k.
DenseMatrix build_vx(const Vector& x, const std::vector<std::size_t>& omega, std::size_t n);

/// Unit vector with s nonzero coordinates: uniform support, Gaussian values
/// normalized to unit length.
Vector random_sparse_unit(std::size_t n, std::size_t s, Rng& rng);

/// `members` matrices V_x for independent random_sparse_unit draws x, all
/// sharing omega.
MatrixFamily vx_family(const std::vector<std::size_t>& omega, std::size_t n, std::size_t s, std::size_t members,
                       Rng& rng);

struct EnergyReport {
  double estimate = 0.0;
  double std_error = 0.0;
  double target = 0.0;  ///< ||x||_2^2
  std::size_t trials = 0;

  double relative_deviation() const { return target == 0.0 ? std::abs(estimate) : std::abs(estimate / target - 1.0); }
};

/// Monte Carlo estimate of E ||Phi x||^2 over fresh generators from `law`
/// (omega taken from `op`). Requires a unit-variance law.
EnergyReport expected_energy_check(const CirculantOperator& op, const Vector& x, const weibull::AlphaLaw& law,
                                   const McPlan& plan);

void to_json(nlohmann::json& j, const CirculantOperator& op);
CirculantOperator operator_from_json(const nlohmann::json& j);

}  // namespace uhw::circulant
