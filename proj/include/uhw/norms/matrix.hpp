#pragma once

#include <Eigen/Dense>

namespace uhw {

/// Dense real matrix. Storage order is Eigen's default; every serializer
/// writes row-major.
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Throws std::invalid_argument for empty shapes or non-finite entries.
void validate_matrix(const DenseMatrix& a);

}  // namespace uhw
