#include "wavemc/pushforward.hpp"

#include <cmath>
#include <numbers>

namespace wavemc {

std::vector<double> hermite_coefficients(const std::function<double(double)>& f,
                                         double sigma, int m_max) {
  std::vector<double> b(m_max + 1, 0.0);
  if (sigma <= 0.0) return b;
  // E[f(sigma z) He~_m(z)] with He~_m = He_m / sqrt(m!), composite Simpson
  // against the normal density; the normalized recurrence keeps everything
  // in range for m up to ~60.
  const double zmax = std::sqrt(2.0 * m_max + 1.0) + 10.0;
  const int segments = 4000;  // even
  const double dz = 2.0 * zmax / segments;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  std::vector<double> he(m_max + 1);
  for (int s = 0; s <= segments; ++s) {
    const double z = -zmax + s * dz;
    const double w = (s == 0 || s == segments) ? 1.0 : (s % 2 == 1 ? 4.0 : 2.0);
    const double phi = norm * std::exp(-0.5 * z * z);
    he[0] = 1.0;
    if (m_max >= 1) he[1] = z;
    for (int m = 1; m < m_max; ++m)
      he[m + 1] = (z * he[m] - std::sqrt(double(m)) * he[m - 1]) / std::sqrt(double(m + 1));
    const double fv = f(sigma * z);
    for (int m = 0; m <= m_max; ++m) b[m] += w * fv * he[m] * phi;
  }
  for (double& x : b) x *= dz / 3.0;
  return b;
}

RealField pushforward_correlation(const RealField& q, double sigma_sq,
                                  const std::vector<double>& coeffs) {
  RealField out = RealField::Zero(q.size());
  if (sigma_sq <= 0.0) return out;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    const double rho = q[i] / sigma_sq;
    double p = 1.0, acc = 0.0;
    for (std::size_t m = 1; m < coeffs.size(); ++m) {
      p *= rho;
      acc += coeffs[m] * coeffs[m] * p;
    }
    out[i] = acc;
  }
  return out;
}

namespace {
SpectralDensity pushforward_density(const SpectralDensity& s,
                                    const std::function<double(double)>& f,
                                    const Fft3& fft, int m_max) {
  const double var = s.point_variance();
  if (var <= 0.0) return SpectralDensity(s.lattice);
  RealField q = fft.inverse_to_real(s.values.cast<std::complex<double>>());
  auto b = hermite_coefficients(f, std::sqrt(var), m_max);
  RealField qf = pushforward_correlation(q, var, b);
  ComplexField sf = fft.forward_real(qf);
  // exact value is a sum of convolution powers of s >= 0; clamp round-off
  return SpectralDensity(s.lattice, sf.real().max(0.0));
}
}  // namespace

MeasureSpec pushforward_spec(const MeasureSpec& base,
                             const std::function<double(double)>& f0,
                             const std::function<double(double)>& f1,
                             const Fft3& fft, int m_max) {
  return MeasureSpec{pushforward_density(base.s00, f0, fft, m_max),
                     pushforward_density(base.s11, f1, fft, m_max)};
}

}  // namespace wavemc
