#include "wavemc/limits.hpp"

#include <cmath>
#include <numbers>

namespace wavemc {

RealField CompactBump::sample(const Lattice& lat) const {
  RealField out(lat.size());
  const int n = lat.n();
  const double L = lat.side();
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i) {
    const double dx = std::remainder(lat.h() * i - center[0], L);
    for (int j = 0; j < n; ++j) {
      const double dy = std::remainder(lat.h() * j - center[1], L);
      for (int k = 0; k < n; ++k, ++idx) {
        const double dz = std::remainder(lat.h() * k - center[2], L);
        out[idx] = value(center + Vec3(dx, dy, dz));
      }
    }
  }
  return out;
}

CompactBump gaussian_bump(const Vec3& center, double sigma, double amplitude, double cut) {
  CompactBump b;
  b.center = center;
  b.support_radius = cut * sigma;
  b.value = [=](const Vec3& p) {
    const double r2 = (p - center).squaredNorm();
    return amplitude * std::exp(-0.5 * r2 / (sigma * sigma));
  };
  b.gradient = [=](const Vec3& p) {
    const Vec3 d = p - center;
    return Vec3(-amplitude * std::exp(-0.5 * d.squaredNorm() / (sigma * sigma)) /
                (sigma * sigma) * d);
  };
  return b;
}

CompactBump mexican_hat_bump(const Vec3& center, double sigma, double amplitude, double cut) {
  CompactBump b;
  b.center = center;
  b.support_radius = cut * sigma;
  const double s2 = sigma * sigma;
  b.value = [=](const Vec3& p) {
    const double r2 = (p - center).squaredNorm();
    return amplitude * (r2 / s2 - 3.0) / s2 * std::exp(-0.5 * r2 / s2);
  };
  b.gradient = [=](const Vec3& p) {
    const Vec3 d = p - center;
    const double r2 = d.squaredNorm();
    const double g = std::exp(-0.5 * r2 / s2);
    // d/dx [ (r2/s2 - 3)/s2 g ] = [2/s2^2 - (r2/s2 - 3)/s2^2] g x
    return Vec3(amplitude * (2.0 / (s2 * s2) - (r2 / s2 - 3.0) / (s2 * s2)) * g * d);
  };
  return b;
}

double plane_integral(const CompactBump& f, const Vec3& omega, double offset,
                      double span, int points_per_axis) {
  // orthonormal frame (e1, e2, omega)
  const Vec3 axis = std::abs(omega[0]) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  const Vec3 e1 = omega.cross(axis).normalized();
  const Vec3 e2 = omega.cross(e1);
  // patch centered at the projection of the bump center onto the plane
  const Vec3 base = f.center + (offset - f.center.dot(omega)) * omega;
  const double step = 2.0 * span / points_per_axis;
  double acc = 0.0;
  for (int i = 0; i < points_per_axis; ++i) {
    const double s = -span + (i + 0.5) * step;
    for (int j = 0; j < points_per_axis; ++j) {
      const double r = -span + (j + 0.5) * step;
      acc += f.value(base + s * e1 + r * e2);
    }
  }
  return acc * step * step;
}

namespace {
double plane_integral_grad_dot(const CompactBump& f, const Vec3& omega, double offset,
                               double span, int points_per_axis) {
  const Vec3 axis = std::abs(omega[0]) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  const Vec3 e1 = omega.cross(axis).normalized();
  const Vec3 e2 = omega.cross(e1);
  const Vec3 base = f.center + (offset - f.center.dot(omega)) * omega;
  const double step = 2.0 * span / points_per_axis;
  double acc = 0.0;
  for (int i = 0; i < points_per_axis; ++i) {
    const double s = -span + (i + 0.5) * step;
    for (int j = 0; j < points_per_axis; ++j) {
      const double r = -span + (j + 0.5) * step;
      acc += f.gradient(base + s * e1 + r * e2).dot(omega);
    }
  }
  return acc * step * step;
}

constexpr double kQuarterInvFourPiSq = 1.0 / (16.0 * std::numbers::pi * std::numbers::pi);
}  // namespace

RealField operator_R(const RealField& f, const Fft3& fft) {
  // R f = -1/4 E * f: multiplier +1/(4|k|^2), zero mode 0
  const Lattice& lat = fft.lattice();
  ComplexField fhat = fft.forward_real(f);
  const RealField& k2 = lat.k_squared();
  for (Eigen::Index i = 0; i < lat.size(); ++i)
    fhat[i] = k2[i] > 0.0 ? fhat[i] * (0.25 / k2[i]) : std::complex<double>(0.0);
  return fft.inverse_to_real(fhat);
}

double operator_R_quadrature(const CompactBump& f, const Vec3& at,
                             const SphereQuadrature& directions, double span,
                             int points_per_axis) {
  // plane integrals are even in omega: full-sphere sum equals twice the
  // hemisphere integral of the definition
  double acc = 0.0;
  for (std::size_t q = 0; q < directions.size(); ++q) {
    const Vec3& omega = directions.nodes[q];
    acc += directions.weights[q] *
           plane_integral(f, omega, at.dot(omega), span, points_per_axis);
  }
  return 0.5 * acc * kQuarterInvFourPiSq;
}

RealField operator_Pcal(const RealField& f, const Fft3& fft) {
  // Pcal f = 1/4 P * f
  const Lattice& lat = fft.lattice();
  ComplexField fhat = fft.forward_real(f);
  const int n = lat.n();
  const RealField& knorm = lat.k_norm();
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k, ++idx) {
        const int m3 = lat.mode(k);
        if (m3 == 0) {
          fhat[idx] = 0.0;
        } else {
          const double sgn = m3 > 0 ? 1.0 : -1.0;
          fhat[idx] *= std::complex<double>(0.0, -0.25 * sgn / knorm[idx]);
        }
      }
    }
  }
  return fft.inverse_to_real(fhat);
}

double operator_Pcal_quadrature(const CompactBump& f, const Vec3& at,
                                const SphereQuadrature& directions, double span,
                                int points_per_axis) {
  double acc = 0.0;
  for (std::size_t q = 0; q < directions.size(); ++q) {
    const Vec3& omega = directions.nodes[q];
    if (omega[2] <= 0.0) continue;  // upper hemisphere only
    acc += directions.weights[q] *
           plane_integral_grad_dot(f, omega, at.dot(omega), span, points_per_axis);
  }
  return acc * kQuarterInvFourPiSq;
}

double verify_radon_identity(const CompactBump& f, const Lattice& lat, const Fft3& fft,
                             const std::vector<Vec3>& probes,
                             const SphereQuadrature& directions, double span,
                             int points_per_axis) {
  if (f.support_radius > lat.side() / 4)
    throw std::invalid_argument("bump support exceeds L/4");
  // direction-quadrature route
  std::vector<double> lhs;
  lhs.reserve(probes.size());
  for (const Vec3& v : probes) {
    double acc = 0.0;
    for (std::size_t q = 0; q < directions.size(); ++q) {
      const Vec3& omega = directions.nodes[q];
      acc += directions.weights[q] *
             plane_integral(f, omega, v.dot(omega), span, points_per_axis);
    }
    lhs.push_back(acc / (16.0 * std::numbers::pi * std::numbers::pi));
  }
  // multiplier route: -1/2 E*f read at the nearest lattice points
  Kernel e = kernel_E(lat);
  RealField ef = convolve(e, f.sample(lat), fft);
  std::vector<double> rhs;
  rhs.reserve(probes.size());
  for (const Vec3& v : probes) {
    const int i = lat.wrap(static_cast<int>(std::lround(v[0] / lat.h())));
    const int j = lat.wrap(static_cast<int>(std::lround(v[1] / lat.h())));
    const int k = lat.wrap(static_cast<int>(std::lround(v[2] / lat.h())));
    rhs.push_back(-0.5 * ef[lat.flat(i, j, k)]);
  }
  // compare modulo a constant: E* is only defined on the mean-zero sector
  double mean_l = 0.0, mean_r = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    mean_l += lhs[i];
    mean_r += rhs[i];
  }
  mean_l /= lhs.size();
  mean_r /= rhs.size();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    num = std::max(num, std::abs((lhs[i] - mean_l) - (rhs[i] - mean_r)));
    den = std::max(den, std::abs(rhs[i] - mean_r));
  }
  return den > 0.0 ? num / den : num;
}

CorrelationSet CorrelationSet::diagonal(const MeasureSpec& spec) {
  CorrelationSet out(spec.lattice());
  out.q00 = spec.s00.values.cast<std::complex<double>>();
  out.q11 = spec.s11.values.cast<std::complex<double>>();
  return out;
}

RealField LimitCorrelations::real_q(int i, int j, const Fft3& fft) const {
  const ComplexField* q = i == 0 ? (j == 0 ? &q00 : &q01) : (j == 0 ? &q10 : &q11);
  return fft.inverse_to_real(*q);
}

double LimitCorrelations::value(int i, int j, const Index3& offset, const Fft3& fft) const {
  RealField q = real_q(i, j, fft);
  return q[lattice.flat(lattice.wrap(offset[0]), lattice.wrap(offset[1]),
                        lattice.wrap(offset[2]))];
}

LimitCorrelations limit_correlations(const CorrelationSet& qm, const CorrelationSet& qp) {
  require_same_lattice(qm.lattice, qp.lattice);
  const Lattice& lat = qm.lattice;
  LimitCorrelations out(lat);
  const Kernel e = kernel_E(lat);
  const Kernel p = kernel_P(lat);
  const RealField& k2 = lat.k_squared();
  const auto k2c = k2.cast<std::complex<double>>();

  out.q00 = 0.25 * (qp.q00 + qm.q00 - e.multiplier * (qp.q11 + qm.q11) +
                    p.multiplier * (qp.q01 - qm.q01 - qp.q10 + qm.q10));
  out.q10 = 0.25 * (qp.q10 + qm.q10 - qp.q01 - qm.q01 +
                    p.multiplier * (qp.q11 - qm.q11 + k2c * (qp.q00 - qm.q00)));
  out.q01 = -out.q10;
  out.q11 = 0.25 * (qp.q11 + qm.q11 + k2c * (qp.q00 + qm.q00) -
                    k2c * p.multiplier * (qp.q10 - qm.q10 - qp.q01 + qm.q01));
  return out;
}

LimitCorrelations gibbs_limit_correlations(double t_minus, double t_plus,
                                           const SmoothingKernel& theta, const Fft3& fft) {
  if (t_minus < 0.0 || t_plus < 0.0)
    throw std::invalid_argument("temperatures must be >= 0");
  const Lattice& lat = theta.lattice;
  RealField p = kernel_power_spectrum(theta, fft);
  LimitCorrelations out(lat);
  const double sum = 0.5 * (t_plus + t_minus);
  const double diff = 0.5 * (t_plus - t_minus);
  const int n = lat.n();
  const RealField& k2 = lat.k_squared();
  const RealField& knorm = lat.k_norm();
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k, ++idx) {
        out.q11[idx] = sum * p[idx];
        if (k2[idx] > 0.0) out.q00[idx] = sum * p[idx] / k2[idx];
        const int m3 = lat.mode(k);
        if (m3 != 0) {
          const double sgn = m3 > 0 ? 1.0 : -1.0;
          out.q10[idx] = std::complex<double>(0.0, -diff * sgn / knorm[idx]) * p[idx];
        }
      }
    }
  }
  out.q01 = -out.q10;
  return out;
}

CurrentPrediction current_constant(const SmoothingKernel& theta, double t_minus,
                                   double t_plus, const Fft3& fft) {
  const Lattice& lat = theta.lattice;
  RealField p = kernel_power_spectrum(theta, fft);
  const RealField& knorm = lat.k_norm();
  const int n = lat.n();
  double acc = 0.0;
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k, ++idx) {
        if (knorm[idx] == 0.0) continue;
        acc += p[idx] * std::abs(lat.freq(k)) / knorm[idx];
      }
    }
  }
  CurrentPrediction pred;
  pred.c_theta = 0.5 * acc / lat.volume();
  pred.j_vector = Vec3(0.0, 0.0, -pred.c_theta * (t_plus - t_minus));
  return pred;
}

Vec3 limit_mean_current(const LimitCorrelations& q) {
  const Lattice& lat = q.lattice;
  const int n = lat.n();
  Vec3 j = Vec3::Zero();
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int jj = 0; jj < n; ++jj) {
      for (int k = 0; k < n; ++k, ++idx) {
        const std::complex<double> v = q.q10[idx];
        // Re[(-i k_a) v] = k_a Im(v)
        j[0] += lat.freq(i) * v.imag();
        j[1] += lat.freq(jj) * v.imag();
        j[2] += lat.freq(k) * v.imag();
      }
    }
  }
  return j / lat.volume();
}

double quadratic_form_Qinf(const TestFunction& psi, const LimitCorrelations& q,
                           const Fft3& fft) {
  require_same_lattice(psi.lattice, q.lattice);
  ComplexField p0 = fft.forward_real(psi.psi0);
  ComplexField p1 = fft.forward_real(psi.psi1);
  const std::complex<double> acc =
      (p0.conjugate() * q.q00 * p0).sum() + (p0.conjugate() * q.q01 * p1).sum() +
      (p1.conjugate() * q.q10 * p0).sum() + (p1.conjugate() * q.q11 * p1).sum();
  return acc.real() / q.lattice.volume();
}

}  // namespace wavemc
