#pragma once

#include <cstddef>
#include <vector>

#include "uhw/norms/matrix.hpp"
#include "uhw/norms/norm_profile.hpp"

namespace uhw {

/// Componentwise suprema of NormProfile over a family.
struct FamilyNorms {
  double frobenius = 0.0;       ///< M_F
  double spectral = 0.0;        ///< M_{l2 -> l2}
  double two_to_inf = 0.0;      ///< M_{l2 -> l_inf}
  double entry_max = 0.0;
  double gram_frobenius = 0.0;  ///< sup ||A^T A||_F
};

/// Finite nonempty family of equally shaped matrices with cached norms.
class MatrixFamily {
 public:
  /// Throws std::invalid_argument for an empty family, mixed shapes, or
  /// invalid members.
  explicit MatrixFamily(std::vector<DenseMatrix> members, double tol = norms::kDefaultTolerance);

  std::size_t size() const noexcept { return members_.size(); }
  Eigen::Index rows() const noexcept { return members_.front().rows(); }
  Eigen::Index cols() const noexcept { return members_.front().cols(); }

  const DenseMatrix& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<DenseMatrix>& members() const noexcept { return members_; }
  const std::vector<norms::NormProfile>& profiles() const noexcept { return profiles_; }
  const FamilyNorms& norms() const noexcept { return norms_; }

  MatrixFamily scaled(double c) const;

 private:
  std::vector<DenseMatrix> members_;
  std::vector<norms::NormProfile> profiles_;
  FamilyNorms norms_;
};

namespace norms {

FamilyNorms family_norms(const MatrixFamily& family, double tol = kDefaultTolerance);

}  // namespace norms
}  // namespace uhw
