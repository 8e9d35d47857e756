#pragma once

#include <vector>

#include "uhw/norms/matrix.hpp"

namespace uhw::norms {

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr int kPowerIterationCap = 100000;

struct NormProfile {
  double frobenius = 0.0;
  double spectral = 0.0;    ///< l2 -> l2
  double two_to_inf = 0.0;  ///< l2 -> l_inf, the largest row l2 norm
  double entry_max = 0.0;
  double gram_frobenius = 0.0;  ///< ||A^T A||_F
};

struct PowerIterationResult {
  double value = 0.0;
  int iterations = 0;
};

/// Largest singular value by power iteration on A^T A from a fixed seeded
/// start. Stops once the Rayleigh quotient rho satisfies
/// ||A^T A v - rho v|| <= sqrt(tol) rho, which pins rho to O(tol) relative.
/// Throws NumericalError after kPowerIterationCap iterations.
PowerIterationResult spectral_norm_power(const DenseMatrix& a, double tol = kDefaultTolerance);

/// Largest singular value from a dense symmetric eigensolve of the smaller Gram.
double spectral_norm_dense(const DenseMatrix& a);

/// Power iteration, cross-checked against the dense eigensolve when
/// min(m, n) <= 64; on disagreement beyond 10 tol the dense value wins.
double spectral_norm(const DenseMatrix& a, double tol = kDefaultTolerance);

double two_to_inf_norm(const DenseMatrix& a);

NormProfile norm_profile(const DenseMatrix& a, double tol = kDefaultTolerance);

}  // namespace uhw::norms
