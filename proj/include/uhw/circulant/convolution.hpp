#pragma once

#include "uhw/norms/matrix.hpp"

namespace uhw::circulant {

/// Lengths above this use the transform path in circ_convolve.
inline constexpr Eigen::Index kDirectConvolutionLimit = 64;

/// (z * x)_j = sum_k z_{(j - k) mod n} x_k, 0-based. Throws on length mismatch.
Vector circ_convolve_direct(const Vector& z, const Vector& x);

/// Same product through a real DFT: forward, pointwise product, inverse.
Vector circ_convolve_fft(const Vector& z, const Vector& x);

/// Direct double loop for n <= 64, transform path otherwise.
Vector circ_convolve(const Vector& z, const Vector& x);

}  // namespace uhw::circulant
