#pragma once

#include <span>

#include "uhw/norms/family.hpp"

namespace uhw::chaos {

/// xi^T A xi for square A. Throws std::invalid_argument on dimension mismatch.
double quad_form(const DenseMatrix& a, const Vector& xi);

/// xi^T A eta.
double decoupled_form(const DenseMatrix& a, const Vector& xi, const Vector& eta);

/// sup_A | ||A xi||^2 - E ||A xi||^2 | where E ||A xi||^2 = variance * ||A||_F^2
/// for i.i.d. coordinates of the given variance.
double centered_sup(const MatrixFamily& family, const Vector& xi, double variance = 1.0);

/// Per-coordinate variances: E ||A xi||^2 = sum_j variances[j] ||col_j(A)||^2.
double centered_sup(const MatrixFamily& family, const Vector& xi, std::span<const double> variances);

}  // namespace uhw::chaos
