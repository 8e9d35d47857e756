#include "uhw/circulant/convolution.hpp"

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace uhw::circulant {

namespace {

void check_lengths(const Vector& z, const Vector& x) {
  if (z.size() != x.size()) throw std::invalid_argument("circular convolution: length mismatch");
  if (z.size() == 0) throw std::invalid_argument("circular convolution: empty input");
}

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are built once per length under a lock and kept for the
// life of the process.
class PlanCache {
 public:
  struct Plans {
    fftw_plan forward;
    fftw_plan inverse;
  };

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.inverse);
    }
  }

  Plans get(int n) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(n); it != plans_.end()) return it->second;
    std::vector<double> real(static_cast<std::size_t>(n));
    std::vector<fftw_complex> spectrum(static_cast<std::size_t>(n / 2 + 1));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Plans p{fftw_plan_dft_r2c_1d(n, real.data(), spectrum.data(), flags),
            fftw_plan_dft_c2r_1d(n, spectrum.data(), real.data(), flags)};
    plans_.emplace(n, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<int, Plans> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

Vector circ_convolve_direct(const Vector& z, const Vector& x) {
  check_lengths(z, x);
  const Eigen::Index n = z.size();
  Vector out = Vector::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) acc += z[(j - k + n) % n] * x[k];
    out[j] = acc;
  }
  return out;
}

Vector circ_convolve_fft(const Vector& z, const Vector& x) {
  check_lengths(z, x);
  const int n = static_cast<int>(z.size());
  const auto plans = plan_cache().get(n);
  const std::size_t bins = static_cast<std::size_t>(n / 2 + 1);

  std::vector<double> zin(z.data(), z.data() + n);
  std::vector<double> xin(x.data(), x.data() + n);
  std::vector<fftw_complex> zf(bins), xf(bins);
  fftw_execute_dft_r2c(plans.forward, zin.data(), zf.data());
  fftw_execute_dft_r2c(plans.forward, xin.data(), xf.data());
  for (std::size_t b = 0; b < bins; ++b) {
    const std::complex<double> prod =
        std::complex<double>(zf[b][0], zf[b][1]) * std::complex<double>(xf[b][0], xf[b][1]);
    zf[b][0] = prod.real();
    zf[b][1] = prod.imag();
  }
  std::vector<double> result(static_cast<std::size_t>(n));
  fftw_execute_dft_c2r(plans.inverse, zf.data(), result.data());

  Vector out(n);
  for (int j = 0; j < n; ++j) out[j] = result[static_cast<std::size_t>(j)] / n;  // FFTW's inverse is unnormalized
  return out;
}

Vector circ_convolve(const Vector& z, const Vector& x) {
  return z.size() > kDirectConvolutionLimit ? circ_convolve_fft(z, x) : circ_convolve_direct(z, x);
}

}  // namespace uhw::circulant
