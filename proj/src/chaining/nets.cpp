#include "uhw/chaining/nets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uhw::chaining {

std::string to_string(DistanceTag tag) { return tag == DistanceTag::spectral ? "spectral" : "two_to_inf"; }

DenseMatrix pairwise_distances(const MatrixFamily& family, DistanceTag tag) {
  const auto k = static_cast<Eigen::Index>(family.size());
  DenseMatrix d = DenseMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const DenseMatrix diff = family[static_cast<std::size_t>(i)] - family[static_cast<std::size_t>(j)];
      const double v = tag == DistanceTag::spectral ? norms::spectral_norm(diff) : norms::two_to_inf_norm(diff);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

std::vector<std::size_t> greedy_net(const DenseMatrix& distances, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("greedy_net: radius must be positive");
  const auto k = distances.rows();
  std::vector<std::size_t> centers{0};
  Vector nearest = distances.row(0).transpose();
  for (;;) {
    Eigen::Index far = 0;
    const double worst = nearest.maxCoeff(&far);
    if (worst <= radius) break;
    centers.push_back(static_cast<std::size_t>(far));
    for (Eigen::Index i = 0; i < k; ++i) nearest[i] = std::min(nearest[i], distances(far, i));
  }
  return centers;
}

std::vector<std::size_t> greedy_net(const MatrixFamily& family, DistanceTag tag, double radius) {
  return greedy_net(pairwise_distances(family, tag), radius);
}

NetSequence build_net_sequence(const DenseMatrix& distances, DistanceTag tag, int octaves) {
  NetSequence seq;
  seq.distance_tag = tag;
  const double diameter = distances.size() == 0 ? 0.0 : distances.maxCoeff();
  if (diameter == 0.0) {
    seq.radii.push_back(0.0);
    seq.nets.push_back({0});
    return seq;
  }
  for (int k = 0; k <= octaves; ++k) {
    const double r = std::ldexp(diameter, -k);
    seq.radii.push_back(r);
    seq.nets.push_back(greedy_net(distances, r));
  }
  return seq;
}

double entropy_gamma(const NetSequence& nets, double exponent) {
  if (!(exponent == 2.0 || (exponent > 0.0 && exponent <= 1.0))) {
    throw std::invalid_argument("entropy_gamma: exponent must be 2 or lie in (0, 1]");
  }
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < nets.radii.size(); ++k) {
    const double width = nets.radii[k] - nets.radii[k + 1];
    const double log_n = std::log(static_cast<double>(nets.nets[k + 1].size()));
    integral += width * std::pow(log_n, 1.0 / exponent);
  }
  return integral;
}

double entropy_gamma(const MatrixFamily& family, DistanceTag tag, double exponent) {
  return entropy_gamma(build_net_sequence(pairwise_distances(family, tag), tag), exponent);
}

}  // namespace uhw::chaining
