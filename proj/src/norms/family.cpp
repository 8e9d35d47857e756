#include "uhw/norms/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace uhw {

MatrixFamily::MatrixFamily(std::vector<DenseMatrix> members, double tol) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("matrix family must be nonempty");
  const auto m = members_.front().rows();
  const auto n = members_.front().cols();
  profiles_.reserve(members_.size());
  for (const auto& a : members_) {
    if (a.rows() != m || a.cols() != n) throw std::invalid_argument("matrix family members must share one shape");
    profiles_.push_back(norms::norm_profile(a, tol));
  }
  for (const auto& p : profiles_) {
    norms_.frobenius = std::max(norms_.frobenius, p.frobenius);
    norms_.spectral = std::max(norms_.spectral, p.spectral);
    norms_.two_to_inf = std::max(norms_.two_to_inf, p.two_to_inf);
    norms_.entry_max = std::max(norms_.entry_max, p.entry_max);
    norms_.gram_frobenius = std::max(norms_.gram_frobenius, p.gram_frobenius);
  }
}

MatrixFamily MatrixFamily::scaled(double c) const {
  std::vector<DenseMatrix> out;
  out.reserve(members_.size());
  for (const auto& a : members_) out.push_back(c * a);
  return MatrixFamily(std::move(out));
}

namespace norms {

FamilyNorms family_norms(const MatrixFamily& family, double tol) {
  if (tol == kDefaultTolerance) return family.norms();
  return MatrixFamily(family.members(), tol).norms();
}

}  // namespace norms
}  // namespace uhw
