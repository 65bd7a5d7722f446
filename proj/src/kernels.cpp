#include "wavemc/kernels.hpp"

namespace wavemc {

Kernel kernel_E(const Lattice& lat) {
  Kernel ker(lat);
  const RealField& k2 = lat.k_squared();
  for (Eigen::Index i = 0; i < lat.size(); ++i)
    ker.multiplier[i] = k2[i] > 0.0 ? std::complex<double>(-1.0 / k2[i], 0.0)
                                    : std::complex<double>(0.0, 0.0);
  return ker;
}

Kernel kernel_P(const Lattice& lat) {
  Kernel ker(lat);
  const int n = lat.n();
  const RealField& knorm = lat.k_norm();
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k, ++idx) {
        const int m3 = lat.mode(k);
        if (m3 == 0) continue;  // sgn(0) = 0 on the k3 = 0 plane
        const double sgn = m3 > 0 ? 1.0 : -1.0;
        ker.multiplier[idx] = std::complex<double>(0.0, -sgn / knorm[idx]);
      }
    }
  }
  return ker;
}

ComplexField apply_multiplier(const Kernel& kernel, const ComplexField& fhat) {
  return kernel.multiplier * fhat;
}

RealField convolve(const Kernel& kernel, const RealField& f, const Fft3& fft) {
  ComplexField fhat = fft.forward_real(f);
  return fft.inverse_to_real(apply_multiplier(kernel, fhat));
}

}  // namespace wavemc
