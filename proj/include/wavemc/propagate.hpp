#pragma once

#include "wavemc/fields.hpp"

namespace wavemc {

// Per-mode multipliers of the wave group at a fixed time:
//   uhat(t) =  cos(|k|t) uhat0 + sin(|k|t)/|k| vhat0
//   vhat(t) = -|k| sin(|k|t) uhat0 + cos(|k|t) vhat0
// with the k = 0 pair (1, t).  |k| is the continuum norm of the dual
// frequency, so the lattice dynamics is the exact bandlimited dynamics.
struct PropagatorPlan {
  Lattice lattice;
  double t;
  RealField cos_kt;
  RealField sin_kt_over_k;
  RealField minus_k_sin_kt;

  PropagatorPlan(const Lattice& lat, double time);

  void apply(const SpectralState& in, SpectralState& out) const;
  SpectralState apply(const SpectralState& in) const;
};

SpectralState evolve_spectral(const SpectralState& y0, double t);
FieldState evolve_spectral(const FieldState& y0, double t, const Fft3& fft);

// <Y, Psi> = h^3 sum_x (u Psi^0 + v Psi^1).
struct TestFunction {
  Lattice lattice;
  RealField psi0;
  RealField psi1;
  double support_radius;  // Euclidean, about the stated center
  Vec3 center;

  TestFunction(const Lattice& lat)
      : lattice(lat),
        psi0(RealField::Zero(lat.size())),
        psi1(RealField::Zero(lat.size())),
        support_radius(0.0),
        center(Vec3::Zero()) {}
};

// C^2 radial bump (1 - r^2/R^2)^3 of amplitude amp placed in component
// comp (0 or 1) at center.
TestFunction bump_test_function(const Lattice& lat, int comp, const Vec3& center,
                                double radius, double amplitude);

double pair_with_functional(const FieldState& y, const TestFunction& psi);
// Same pairing evaluated spectrally (Plancherel); used by the ensemble
// runner to avoid inverse transforms.
double pair_with_functional_spectral(const SpectralState& y, const ComplexField& psi0_hat,
                                     const ComplexField& psi1_hat);

// Local energy seminorm over the ball |x - center| < R:
//   h^3 sum (|u|^2 + |grad u|^2 + |v|^2), grad spectral.
double local_energy(const FieldState& y, double radius, const Vec3& center,
                    const Fft3& fft);

// Conserved quadratic form h^3 sum (|grad u|^2 + |v|^2); invariant under
// evolve_spectral to round-off.
double total_wave_energy(const FieldState& y, const Fft3& fft);
double total_wave_energy(const SpectralState& y);

// Pointwise energy current j = -v grad(u) with spectral gradient.
Vec3 energy_current(const FieldState& y, const Index3& grid_point, const Fft3& fft);

// grad(u) as three real fields.
std::array<RealField, 3> spectral_gradient(const Lattice& lat, const ComplexField& uhat,
                                           const Fft3& fft);

}  // namespace wavemc
