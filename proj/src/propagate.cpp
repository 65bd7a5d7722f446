#include "wavemc/propagate.hpp"

#include <cmath>

namespace wavemc {

PropagatorPlan::PropagatorPlan(const Lattice& lat, double time)
    : lattice(lat),
      t(time),
      cos_kt(lat.size()),
      sin_kt_over_k(lat.size()),
      minus_k_sin_kt(lat.size()) {
  const RealField& k = lat.k_norm();
  for (Eigen::Index i = 0; i < lat.size(); ++i) {
    const double kk = k[i];
    if (kk == 0.0) {
      cos_kt[i] = 1.0;
      sin_kt_over_k[i] = t;
      minus_k_sin_kt[i] = 0.0;
    } else {
      const double s = std::sin(kk * t);
      cos_kt[i] = std::cos(kk * t);
      sin_kt_over_k[i] = s / kk;
      minus_k_sin_kt[i] = -kk * s;
    }
  }
}

void PropagatorPlan::apply(const SpectralState& in, SpectralState& out) const {
  out.u = cos_kt * in.u + sin_kt_over_k * in.v;
  out.v = minus_k_sin_kt * in.u + cos_kt * in.v;
}

SpectralState PropagatorPlan::apply(const SpectralState& in) const {
  SpectralState out(in.lattice);
  apply(in, out);
  return out;
}

SpectralState evolve_spectral(const SpectralState& y0, double t) {
  return PropagatorPlan(y0.lattice, t).apply(y0);
}

FieldState evolve_spectral(const FieldState& y0, double t, const Fft3& fft) {
  SpectralState sp(y0.lattice);
  sp.u = fft.forward_real(y0.u);
  sp.v = fft.forward_real(y0.v);
  SpectralState out = PropagatorPlan(y0.lattice, t).apply(sp);
  return FieldState(y0.lattice, fft.inverse_to_real(out.u), fft.inverse_to_real(out.v));
}

TestFunction bump_test_function(const Lattice& lat, int comp, const Vec3& center,
                                double radius, double amplitude) {
  TestFunction psi(lat);
  psi.support_radius = radius;
  psi.center = center;
  RealField& target = comp == 0 ? psi.psi0 : psi.psi1;
  const int n = lat.n();
  const double L = lat.side();
  auto per_dist = [L](double d) {
    d = std::remainder(d, L);
    return d;
  };
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i) {
    const double dx = per_dist(lat.h() * i - center[0]);
    for (int j = 0; j < n; ++j) {
      const double dy = per_dist(lat.h() * j - center[1]);
      for (int k = 0; k < n; ++k, ++idx) {
        const double dz = per_dist(lat.h() * k - center[2]);
        const double w = 1.0 - (dx * dx + dy * dy + dz * dz) / (radius * radius);
        target[idx] = w > 0.0 ? amplitude * w * w * w : 0.0;
      }
    }
  }
  return psi;
}

double pair_with_functional(const FieldState& y, const TestFunction& psi) {
  require_same_lattice(y.lattice, psi.lattice);
  return y.lattice.cell_volume() *
         ((y.u * psi.psi0).sum() + (y.v * psi.psi1).sum());
}

double pair_with_functional_spectral(const SpectralState& y, const ComplexField& psi0_hat,
                                     const ComplexField& psi1_hat) {
  const std::complex<double> acc =
      (y.u * psi0_hat.conjugate()).sum() + (y.v * psi1_hat.conjugate()).sum();
  return acc.real() / y.lattice.volume();
}

std::array<RealField, 3> spectral_gradient(const Lattice& lat, const ComplexField& uhat,
                                           const Fft3& fft) {
  std::array<RealField, 3> grad;
  for (int a = 0; a < 3; ++a)
    grad[a] = fft.inverse_to_real(derivative_spectrum(lat, uhat, a));
  return grad;
}

double local_energy(const FieldState& y, double radius, const Vec3& center,
                    const Fft3& fft) {
  const Lattice& lat = y.lattice;
  ComplexField uhat = fft.forward_real(y.u);
  auto grad = spectral_gradient(lat, uhat, fft);
  const int n = lat.n();
  const double L = lat.side();
  const double r2 = radius * radius;
  double acc = 0.0;
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i) {
    const double dx = std::remainder(lat.h() * i - center[0], L);
    for (int j = 0; j < n; ++j) {
      const double dy = std::remainder(lat.h() * j - center[1], L);
      for (int k = 0; k < n; ++k, ++idx) {
        const double dz = std::remainder(lat.h() * k - center[2], L);
        if (dx * dx + dy * dy + dz * dz < r2) {
          acc += y.u[idx] * y.u[idx] + y.v[idx] * y.v[idx] +
                 grad[0][idx] * grad[0][idx] + grad[1][idx] * grad[1][idx] +
                 grad[2][idx] * grad[2][idx];
        }
      }
    }
  }
  return acc * lat.cell_volume();
}

double total_wave_energy(const SpectralState& y) {
  // Plancherel: h^3 sum_x |f|^2 = (1/L^3) sum_k |fhat|^2
  const RealField& k2 = y.lattice.k_squared();
  const double acc = (k2 * y.u.abs2()).sum() + y.v.abs2().sum();
  return acc / y.lattice.volume();
}

double total_wave_energy(const FieldState& y, const Fft3& fft) {
  SpectralState sp(y.lattice);
  sp.u = fft.forward_real(y.u);
  sp.v = fft.forward_real(y.v);
  return total_wave_energy(sp);
}

Vec3 energy_current(const FieldState& y, const Index3& grid_point, const Fft3& fft) {
  ComplexField uhat = fft.forward_real(y.u);
  auto grad = spectral_gradient(y.lattice, uhat, fft);
  const Eigen::Index idx = y.lattice.flat(grid_point[0], grid_point[1], grid_point[2]);
  return {-y.v[idx] * grad[0][idx], -y.v[idx] * grad[1][idx], -y.v[idx] * grad[2][idx]};
}

}  // namespace wavemc
