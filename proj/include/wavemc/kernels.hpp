#pragma once

#include "wavemc/fft3.hpp"
#include "wavemc/lattice.hpp"

namespace wavemc {

// Translation-invariant convolution kernel given by a Fourier multiplier.
// Real-space view is real when multiplier(-k) = conj(multiplier(k)).
struct Kernel {
  Lattice lattice;
  ComplexField multiplier;

  Kernel(const Lattice& lat) : lattice(lat), multiplier(ComplexField::Zero(lat.size())) {}

  // (1/L^3) sum_k multiplier(k) e^{-ik.x}; the delta kernel (multiplier = 1)
  // comes out as 1/h^3 at the origin.
  RealField real_space(const Fft3& fft) const {
    return fft.inverse_to_real(multiplier);
  }
};

// E: fundamental solution of the Laplacian; multiplier -1/|k|^2, zero mode 0.
// Real-space view ~ -1/(4 pi |x|) up to the torus constant offset.
Kernel kernel_E(const Lattice& lat);

// P: multiplier -i sgn(k3)/|k|, zero on the k3 = 0 plane; real-space view is
// real, odd in x3 and even in (x1, x2).
Kernel kernel_P(const Lattice& lat);

// Convolution (kernel * f) via the multiplier calculus.
RealField convolve(const Kernel& kernel, const RealField& f, const Fft3& fft);
ComplexField apply_multiplier(const Kernel& kernel, const ComplexField& fhat);

// Torus mean of a field: (1/n^3) sum f.
inline double field_mean(const RealField& f) { return f.mean(); }

}  // namespace wavemc
