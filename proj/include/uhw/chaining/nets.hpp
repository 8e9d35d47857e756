#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uhw/norms/family.hpp"

namespace uhw::chaining {

enum class DistanceTag { spectral, two_to_inf };

std::string to_string(DistanceTag tag);

/// Symmetric matrix of ||A_i - A_j|| under the tagged norm.
DenseMatrix pairwise_distances(const MatrixFamily& family, DistanceTag tag);

/// Farthest-point greedy cover seeded with member 0. Every member lies within
/// `radius` of a returned center, and centers are pairwise more than
/// `radius` apart. Returned in selection order.
std::vector<std::size_t> greedy_net(const DenseMatrix& distances, double radius);
std::vector<std::size_t> greedy_net(const MatrixFamily& family, DistanceTag tag, double radius);

/// Greedy nets on the geometric radius grid diameter * 2^{-k}, k = 0..octaves.
struct NetSequence {
  std::vector<double> radii;
  std::vector<std::vector<std::size_t>> nets;
  DistanceTag distance_tag = DistanceTag::spectral;
};

inline constexpr int kRadiusOctaves = 16;

NetSequence build_net_sequence(const DenseMatrix& distances, DistanceTag tag, int octaves = kRadiusOctaves);

/// Upper Riemann sum of u -> (log N(u))^{1/exponent} over the radius grid of
/// a NetSequence, N taken at the lower end of each interval. Zero for a
/// zero-diameter family. `exponent` must be 2 or lie in (0, 1].
double entropy_gamma(const NetSequence& nets, double exponent);
double entropy_gamma(const MatrixFamily& family, DistanceTag tag, double exponent);

}  // namespace uhw::chaining
