#include "uhw/norms/norm_profile.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "uhw/core/error.hpp"
#include "uhw/core/rng.hpp"

namespace uhw {

void validate_matrix(const DenseMatrix& a) {
  if (a.rows() < 1 || a.cols() < 1) throw std::invalid_argument("matrix must have at least one row and column");
  if (!a.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
}

}  // namespace uhw

namespace uhw::norms {

PowerIterationResult spectral_norm_power(const DenseMatrix& a, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_norm_power: tol must be positive");
  PowerIterationResult result;
  if (a.cols() == 0 || a.rows() == 0 || a.isZero(0.0)) return result;

  Rng rng(0x5EED5EED5EED5EEDULL);
  Vector v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 2.0 * rng.uniform_open() - 1.0;
  v.normalize();

  const double residual_tol = std::sqrt(tol);
  for (int it = 1; it <= kPowerIterationCap; ++it) {
    const Vector av = a * v;
    const Vector w = a.transpose() * av;
    const double rho = av.squaredNorm();
    if (rho == 0.0) {
      // Start vector in the null space; restart along a coordinate axis.
      v = Vector::Unit(a.cols(), it % a.cols());
      continue;
    }
    const double residual = (w - rho * v).norm();
    result.iterations = it;
    if (residual <= residual_tol * rho) {
      result.value = std::sqrt(rho);
      return result;
    }
    v = w / w.norm();
  }
  throw NumericalError("spectral_norm_power: no convergence after " + std::to_string(kPowerIterationCap) +
                       " iterations");
}

double spectral_norm_dense(const DenseMatrix& a) {
  const DenseMatrix gram = a.rows() < a.cols() ? DenseMatrix(a * a.transpose()) : DenseMatrix(a.transpose() * a);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double spectral_norm(const DenseMatrix& a, double tol) {
  const double power = spectral_norm_power(a, tol).value;
  if (std::min(a.rows(), a.cols()) > 64) return power;
  const double dense = spectral_norm_dense(a);
  if (std::abs(power - dense) > 10.0 * tol * std::max(dense, 1e-300)) return dense;
  return power;
}

double two_to_inf_norm(const DenseMatrix& a) { return a.rowwise().norm().maxCoeff(); }

NormProfile norm_profile(const DenseMatrix& a, double tol) {
  validate_matrix(a);
  if (!(tol > 0.0)) throw std::invalid_argument("norm_profile: tol must be positive");
  NormProfile p;
  p.frobenius = a.norm();
  p.entry_max = a.cwiseAbs().maxCoeff();
  p.two_to_inf = two_to_inf_norm(a);
  p.spectral = spectral_norm(a, tol);
  p.gram_frobenius = (a.transpose() * a).norm();
  return p;
}

}  // namespace uhw::norms
