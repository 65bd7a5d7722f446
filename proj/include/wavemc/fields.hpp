#pragma once

#include "wavemc/fft3.hpp"
#include "wavemc/lattice.hpp"
#include "wavemc/rng.hpp"

#include <functional>
#include <optional>

namespace wavemc {

// Pair (u, v) of real scalar fields on a lattice: the state Y = (Y^0, Y^1).
struct FieldState {
  Lattice lattice;
  RealField u;
  RealField v;

  FieldState(const Lattice& lat)
      : lattice(lat), u(RealField::Zero(lat.size())), v(RealField::Zero(lat.size())) {}
  FieldState(const Lattice& lat, RealField u_, RealField v_)
      : lattice(lat), u(std::move(u_)), v(std::move(v_)) {}
};

// Spectral state (uhat, vhat); the sampling and evolution are naturally
// spectral, real-space views are produced on demand.
struct SpectralState {
  Lattice lattice;
  ComplexField u;
  ComplexField v;

  SpectralState(const Lattice& lat)
      : lattice(lat), u(ComplexField::Zero(lat.size())), v(ComplexField::Zero(lat.size())) {}
};

// Nonnegative, even density on the dual lattice: one diagonal entry q^ii of
// the spectral correlation measure.
struct SpectralDensity {
  Lattice lattice;
  RealField values;  // indexed like the dual grid, flat

  SpectralDensity(const Lattice& lat) : lattice(lat), values(RealField::Zero(lat.size())) {}
  SpectralDensity(const Lattice& lat, RealField v) : lattice(lat), values(std::move(v)) {}

  // Variance of the sampled field at a point: q(0) = (1/L^3) sum_k s(k).
  double point_variance() const { return values.sum() / lattice.volume(); }
};

// Diagonal translation-invariant measure: cross correlations q^{01}=q^{10}=0.
struct MeasureSpec {
  SpectralDensity s00;
  SpectralDensity s11;

  MeasureSpec(SpectralDensity a, SpectralDensity b) : s00(std::move(a)), s11(std::move(b)) {
    require_same_lattice(s00.lattice, s11.lattice);
  }
  const Lattice& lattice() const { return s00.lattice; }
  MeasureSpec scaled(double c) const {
    return MeasureSpec{SpectralDensity{s00.lattice, (c * s00.values).eval()},
                       SpectralDensity{s11.lattice, (c * s11.values).eval()}};
  }
};

// Two-temperature splice geometry: mu_- for x3 < -a, mu_+ for x3 > a,
// quintic-smoothstep blend across [-a, a].
struct TwoTempSpec {
  MeasureSpec minus;
  MeasureSpec plus;
  double half_width_a;

  TwoTempSpec(MeasureSpec m, MeasureSpec p, double a);
  const Lattice& lattice() const { return minus.lattice(); }
};

// Compactly supported smoothing kernel theta with |theta|=0 outside r_theta.
struct SmoothingKernel {
  Lattice lattice;
  RealField theta;
  double support_radius;
  bool axially_symmetric;

  SmoothingKernel(const Lattice& lat, RealField th, double r, bool axial);
};

// --- 1D spectral factor of the compact-support example measures ---
// f(z) = ((1 - cos(r0 z / sqrt(3))) / z^2)^N with f(0) = (r0^2/6)^N.
double example_spectral_factor(double z, double r0, int n_exp);

// Real-space 1D correlation factor: the inverse transform of f, a centered
// cardinal B-spline of order 2N scaled to half-width N*r0/sqrt(3).
double example_correlation_factor_1d(double s, double r0, int n_exp);

// Spectral density with exactly compactly supported real-space correlation
// q(x) = prod_a g(x_a).  The values are the lattice transform of the exact
// real-space product, i.e. the alias-folded form of f(k1)f(k2)f(k3); folding
// keeps them provably nonnegative and the support exact (see docs/tests).
SpectralDensity spectral_density_example(double r0, int n_exp, const Lattice& lat);

// Euclidean support radius of the example correlation: N * r0.
double example_support_radius(double r0, int n_exp);

// Measure with q^11 = -Lap q^00 (spectrally: s11 = |k|^2 s00).  Each such
// measure is invariant under the wave flow, so a two-temperature splice of
// them relaxes through interface transport alone.
MeasureSpec equilibrium_example_spec(double r0, int n_exp, double amplitude,
                                     const Lattice& lat);

// --- cutoff profile ---
// zeta_+ : 0 for s <= -a, 1 for s >= a, quintic smoothstep between.
double cutoff_profile(double s, double a);
inline double cutoff_minus(double s, double a) { return cutoff_profile(-s, a); }

// --- sampling ---
// Draw uhat, vhat as independent mean-zero Gaussian spectra with
// E|uhat(k)|^2 = s00(k) L^3, Hermitian symmetry enforced by construction;
// self-conjugate modes are real normals with E uhat^2 = s00 L^3.
SpectralState sample_homogeneous_spectral(const MeasureSpec& spec, RngStream& rng);
FieldState sample_homogeneous(const Lattice& lat, const MeasureSpec& spec,
                              RngStream& rng, const Fft3& fft);

// Y0 = zeta_-(x3) Y_- + zeta_+(x3) Y_+ component-wise.
FieldState splice_two_temperature(const FieldState& y_minus, const FieldState& y_plus,
                                  const TwoTempSpec& spec);

// Draw the spliced two-temperature field in one call (two independent
// draws from rng, in minus-then-plus order).
FieldState sample_spliced(const TwoTempSpec& spec, RngStream& rng, const Fft3& fft);

// Pointwise (f0(u), f1(v)).
FieldState pushforward_non_gaussian(const FieldState& y,
                                    const std::function<double(double)>& f0,
                                    const std::function<double(double)>& f1);

// --- smoothed Gibbs measures ---
// s00 = T |theta_hat|^2 / |k|^2 (zero mode pinned to 0), s11 = T |theta_hat|^2.
MeasureSpec gibbs_smoothed_spec(const Lattice& lat, double temperature,
                                const SmoothingKernel& theta, const Fft3& fft);

// |theta_hat(k)|^2 on the dual lattice.
RealField kernel_power_spectrum(const SmoothingKernel& theta, const Fft3& fft);

// C^2 radial bump theta(x) = amp * (1 - r^2/rt^2)^3_+ ; axially symmetric.
SmoothingKernel radial_bump_kernel(const Lattice& lat, double r_theta, double amplitude);

// Real-space correlation of a density: q(z) = (1/L^3) sum_k s(k) e^{-ikz},
// returned as a flat field over lattice offsets.
RealField correlation_from_density(const SpectralDensity& s, const Fft3& fft);

}  // namespace wavemc
