#pragma once

#include "wavemc/lattice.hpp"

namespace wavemc {

// 3D complex transforms on the lattice, per the convention in lattice.hpp.
// Plans are created once per lattice size with FFTW_ESTIMATE so that repeated
// runs are bit-reproducible (measured plans pick timing-dependent algorithms).
// Execution on distinct arrays is thread-safe.
class Fft3 {
 public:
  explicit Fft3(const Lattice& lattice);
  ~Fft3();
  Fft3(const Fft3&) = delete;
  Fft3& operator=(const Fft3&) = delete;

  // fhat(k) = h^3 sum_x f(x) e^{+ik.x}; in-place on a flat field.
  void forward(ComplexField& field) const;
  // f(x) = (1/L^3) sum_k fhat(k) e^{-ik.x}; in-place.
  void inverse(ComplexField& field) const;

  ComplexField forward_real(const RealField& field) const;
  // Inverse transform of a Hermitian spectrum; imaginary part discarded.
  RealField inverse_to_real(const ComplexField& spectrum) const;
  // Max |imag| of the inverse transform, for Hermitian-symmetry checks.
  double inverse_imag_norm(const ComplexField& spectrum) const;

  const Lattice& lattice() const { return lattice_; }

 private:
  Lattice lattice_;
  void* plan_fwd_;  // fftw_plan, kept opaque here
  void* plan_bwd_;
};

// Spectrum of the derivative d_a f: multiply by (-i k_a).
ComplexField derivative_spectrum(const Lattice& lat, const ComplexField& fhat,
                                 int axis);

}  // namespace wavemc
