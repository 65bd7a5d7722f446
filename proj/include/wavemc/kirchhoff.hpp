#pragma once

#include "wavemc/fields.hpp"
#include "wavemc/sphere.hpp"

#include <memory>

namespace wavemc {

struct PointSample {
  double u0 = 0.0;
  double v0 = 0.0;
  Vec3 grad_u0 = Vec3::Zero();
};

// Off-grid evaluation of (u0, v0, grad u0) on the periodic cell.
class FieldSampler {
 public:
  virtual ~FieldSampler() = default;
  virtual PointSample sample(const Vec3& p) const = 0;
};

// Direct Fourier summation over a mode box |m~_a| <= mmax: exact for
// bandlimited fields, used on the verification paths where the 1e-3
// oracle-equivalence budget has no room for interpolation error.
class ExactBandlimitedSampler : public FieldSampler {
 public:
  ExactBandlimitedSampler(const SpectralState& y, int mmax);
  PointSample sample(const Vec3& p) const override;

 private:
  Lattice lattice_;
  int mmax_;
  std::vector<std::complex<double>> uhat_, vhat_;  // boxed spectra
  std::vector<double> freqs_;
};

// Periodic trilinear interpolation of precomputed real-space fields
// (u, v, grad u); optionally on a spectrally upsampled copy of the lattice.
class TrilinearSampler : public FieldSampler {
 public:
  TrilinearSampler(const SpectralState& y, const Fft3& fft, int upsample = 1);
  // From real-space fields as-is (no spectral round trip on u, v); the
  // gradient is still spectral.  Keeps strictly local dependence on v0/u0
  // values, which the finite-propagation-speed guarantee relies on.
  TrilinearSampler(const FieldState& y, const Fft3& fft);
  PointSample sample(const Vec3& p) const override;

 private:
  Lattice fine_;
  RealField u_, v_, gu_[3];
  double interp(const RealField& f, const Vec3& p) const;
};

// Truncate the spectrum to the box |m~_a| <= mmax (zero outside).
SpectralState bandlimit(const SpectralState& y, int mmax);

// Random bandlimited state with unit-amplitude densities on the mode box.
SpectralState sample_bandlimited_state(const Lattice& lat, int mmax, RngStream& rng);

// Kirchhoff spherical-mean evaluation of u(x, t):
//   u(x,t) = (1/4pi) sum_q w_q [ u0 + t v0 + t omega_q . grad u0 ](x + t omega_q).
// Requires t > 0 and t + stencil < L/2 so the light cone never wraps.
double evolve_kirchhoff(const FieldSampler& sampler, const Lattice& lat, const Vec3& x,
                        double t, const SphereQuadrature& quad);

}  // namespace wavemc
