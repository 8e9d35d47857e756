#include "uhw/chaos/forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uhw::chaos {

double quad_form(const DenseMatrix& a, const Vector& xi) {
  if (a.rows() != a.cols()) throw std::invalid_argument("quad_form: matrix must be square");
  if (a.cols() != xi.size()) throw std::invalid_argument("quad_form: dimension mismatch");
  return xi.dot(a * xi);
}

double decoupled_form(const DenseMatrix& a, const Vector& xi, const Vector& eta) {
  if (a.rows() != xi.size() || a.cols() != eta.size()) throw std::invalid_argument("decoupled_form: dimension mismatch");
  return xi.dot(a * eta);
}

double centered_sup(const MatrixFamily& family, const Vector& xi, double variance) {
  if (family.cols() != xi.size()) throw std::invalid_argument("centered_sup: dimension mismatch");
  double sup = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double f = family.profiles()[i].frobenius;
    sup = std::max(sup, std::abs((family[i] * xi).squaredNorm() - variance * f * f));
  }
  return sup;
}

double centered_sup(const MatrixFamily& family, const Vector& xi, std::span<const double> variances) {
  if (family.cols() != xi.size() || static_cast<Eigen::Index>(variances.size()) != xi.size()) {
    throw std::invalid_argument("centered_sup: dimension mismatch");
  }
  const Eigen::Map<const Vector> var(variances.data(), static_cast<Eigen::Index>(variances.size()));
  double sup = 0.0;
  for (const auto& a : family.members()) {
    const double expected = a.colwise().squaredNorm().dot(var);
    sup = std::max(sup, std::abs((a * xi).squaredNorm() - expected));
  }
  return sup;
}

}  // namespace uhw::chaos
