#pragma once

#include "wavemc/fields.hpp"
#include "wavemc/kernels.hpp"
#include "wavemc/propagate.hpp"
#include "wavemc/sphere.hpp"

#include <functional>

namespace wavemc {

// Scalar function of position with compact support, used where quadrature
// must stay independent of the lattice/multiplier route.
struct CompactBump {
  std::function<double(const Vec3&)> value;
  std::function<Vec3(const Vec3&)> gradient;
  double support_radius;
  Vec3 center;

  RealField sample(const Lattice& lat) const;
};

// Radial Gaussian A exp(-|x-c|^2 / (2 sigma^2)); treated as compactly
// supported at support_radius = cut * sigma (tails < 1e-11 at cut >= 7).
CompactBump gaussian_bump(const Vec3& center, double sigma, double amplitude,
                          double cut = 8.0);
// A (|x-c|^2/sigma^2 - 3) exp(-|x-c|^2/(2 sigma^2)) / sigma^2: the Laplacian
// of the Gaussian (mean-zero, radial).
CompactBump mexican_hat_bump(const Vec3& center, double sigma, double amplitude,
                             double cut = 8.0);

// Integral of f over the plane {p : p.omega = offset} by tensor midpoint
// quadrature on a [-span, span]^2 frame patch (exact decay assumed outside).
double plane_integral(const CompactBump& f, const Vec3& omega, double offset,
                      double span, int points_per_axis);

enum class RadonMethod { spectral, plane_quadrature };

// R f = average over a hemisphere of plane integrals through the evaluation
// point, with the 1/(4 pi)^2 normalization; equals -1/4 E*f.
RealField operator_R(const RealField& f, const Fft3& fft);  // spectral route
double operator_R_quadrature(const CompactBump& f, const Vec3& at,
                             const SphereQuadrature& directions, double span,
                             int points_per_axis);

// Pcal f = upper-hemisphere average of plane integrals of grad f . omega;
// equals 1/4 P*f.
RealField operator_Pcal(const RealField& f, const Fft3& fft);
double operator_Pcal_quadrature(const CompactBump& f, const Vec3& at,
                                const SphereQuadrature& directions, double span,
                                int points_per_axis);

// Full-sphere direction average of plane integrals vs -1/2 E*f: returns the
// relative sup-norm residual over the probe points after removing the probe
// mean from both routes (E* is defined modulo constants on the torus).
double verify_radon_identity(const CompactBump& f, const Lattice& lat, const Fft3& fft,
                             const std::vector<Vec3>& probes,
                             const SphereQuadrature& directions, double span,
                             int points_per_axis);

// Lattice correlation data of one translation-invariant measure: the four
// kernels q^{ij}(z) as spectra (cross terms may be zero).
struct CorrelationSet {
  Lattice lattice;
  ComplexField q00, q01, q10, q11;  // spectra, Hermitian

  CorrelationSet(const Lattice& lat)
      : lattice(lat),
        q00(ComplexField::Zero(lat.size())),
        q01(ComplexField::Zero(lat.size())),
        q10(ComplexField::Zero(lat.size())),
        q11(ComplexField::Zero(lat.size())) {}
  static CorrelationSet diagonal(const MeasureSpec& spec);
};

// The four limit kernels q_inf^{ij}(z), kept spectrally.
struct LimitCorrelations {
  Lattice lattice;
  ComplexField q00, q01, q10, q11;

  LimitCorrelations(const Lattice& lat)
      : lattice(lat),
        q00(ComplexField::Zero(lat.size())),
        q01(ComplexField::Zero(lat.size())),
        q10(ComplexField::Zero(lat.size())),
        q11(ComplexField::Zero(lat.size())) {}

  RealField real_q(int i, int j, const Fft3& fft) const;
  // q^{ij}(z) at a lattice offset.
  double value(int i, int j, const Index3& offset, const Fft3& fft) const;
  // q^{11}(0) = (1/L^3) sum_k q11_hat.
  double q11_at_zero() const { return q11.real().sum() / lattice.volume(); }
};

// Assemble the limit correlations from the two bulk measures:
//   q00_inf = 1/4 [ q+00 + q-00 - E*(q+11 + q-11) + P*(q+01 - q-01 - q+10 + q-10) ]
//   q10_inf = 1/4 [ q+10 + q-10 - q+01 - q-01 + P*(q+11 - q-11 - Lap q+00 + Lap q-00) ]
//   q11_inf = 1/4 [ q+11 + q-11 - Lap(q+00 + q-00) + P*Lap(q+10 - q-10 - q+01 + q-01) ]
// with q01_inf = -q10_inf; P-convolutions via the multiplier (Lemma-6.6 form).
LimitCorrelations limit_correlations(const CorrelationSet& q_minus,
                                     const CorrelationSet& q_plus);

// Closed forms for the theta-smoothed Gibbs pair:
//   q00 = 1/2 (T+ + T-) |theta^|^2 / |k|^2 (zero mode 0)
//   q10 = -q01 = -(i/2)(T+ - T-) |theta^|^2 sgn(k3)/|k|
//   q11 = 1/2 (T+ + T-) |theta^|^2
LimitCorrelations gibbs_limit_correlations(double t_minus, double t_plus,
                                           const SmoothingKernel& theta, const Fft3& fft);

struct CurrentPrediction {
  double c_theta;
  Vec3 j_vector;  // -c_theta (0, 0, T+ - T-) for axially symmetric theta
};

// C_theta = 1/(2 L^3) sum_k |theta^(k)|^2 |k3| / |k|.
CurrentPrediction current_constant(const SmoothingKernel& theta, double t_minus,
                                   double t_plus, const Fft3& fft);

// Limiting mean current from the assembled correlations:
//   j_a = d_a q10_inf(0) = (1/L^3) sum_k Re[(-i k_a) q10_hat(k)].
Vec3 limit_mean_current(const LimitCorrelations& q);

// Q_inf(Psi, Psi) = (1/L^3) sum_k sum_ij conj(Psi^i(k)) qij(k) Psi^j(k).
double quadratic_form_Qinf(const TestFunction& psi, const LimitCorrelations& q,
                           const Fft3& fft);

}  // namespace wavemc
