#include "wavemc/kirchhoff.hpp"

#include <cmath>
#include <numbers>

namespace wavemc {

ExactBandlimitedSampler::ExactBandlimitedSampler(const SpectralState& y, int mmax)
    : lattice_(y.lattice), mmax_(mmax) {
  const int n = lattice_.n();
  if (2 * mmax + 1 > n) throw std::invalid_argument("mode box exceeds lattice");
  const int w = 2 * mmax + 1;
  uhat_.assign(static_cast<std::size_t>(w) * w * w, {0.0, 0.0});
  vhat_.assign(uhat_.size(), {0.0, 0.0});
  freqs_.resize(w);
  for (int m = -mmax; m <= mmax; ++m)
    freqs_[m + mmax] = 2.0 * std::numbers::pi * m / lattice_.side();
  for (int a = -mmax; a <= mmax; ++a) {
    for (int b = -mmax; b <= mmax; ++b) {
      for (int c = -mmax; c <= mmax; ++c) {
        const Eigen::Index src =
            lattice_.flat(lattice_.wrap(a), lattice_.wrap(b), lattice_.wrap(c));
        const std::size_t dst =
            (static_cast<std::size_t>(a + mmax) * w + (b + mmax)) * w + (c + mmax);
        uhat_[dst] = y.u[src];
        vhat_[dst] = y.v[src];
      }
    }
  }
}

PointSample ExactBandlimitedSampler::sample(const Vec3& p) const {
  const int w = 2 * mmax_ + 1;
  // per-axis phase tables for e^{-i k.p}
  std::vector<std::complex<double>> px(w), py(w), pz(w);
  for (int m = 0; m < w; ++m) {
    px[m] = std::polar(1.0, -freqs_[m] * p[0]);
    py[m] = std::polar(1.0, -freqs_[m] * p[1]);
    pz[m] = std::polar(1.0, -freqs_[m] * p[2]);
  }
  std::complex<double> su{}, sv{}, gx{}, gy{}, gz{};
  std::size_t idx = 0;
  for (int a = 0; a < w; ++a) {
    const double ka = freqs_[a];
    for (int b = 0; b < w; ++b) {
      const std::complex<double> pab = px[a] * py[b];
      std::complex<double> su_ab{}, sv_ab{}, gz_ab{};
      for (int c = 0; c < w; ++c, ++idx) {
        const std::complex<double> ph = pab * pz[c];
        const std::complex<double> ut = uhat_[idx] * ph;
        su_ab += ut;
        sv_ab += vhat_[idx] * ph;
        gz_ab += freqs_[c] * ut;
      }
      su += su_ab;
      sv += sv_ab;
      gx += ka * su_ab;
      gy += freqs_[b] * su_ab;
      gz += gz_ab;
    }
  }
  const double inv_vol = 1.0 / lattice_.volume();
  PointSample out;
  out.u0 = su.real() * inv_vol;
  out.v0 = sv.real() * inv_vol;
  // d_a u <-> (-i k_a) uhat; real part of (-i z) is imag(z)
  out.grad_u0 = Vec3(gx.imag(), gy.imag(), gz.imag()) * (-inv_vol);
  return out;
}

namespace {
SpectralState upsample_spectrum(const SpectralState& y, int factor) {
  if (factor == 1) return y;
  const Lattice& lat = y.lattice;
  Lattice fine(lat.n() * factor, lat.h() / factor);
  SpectralState out(fine);
  const int n = lat.n();
  for (int i = 0; i < n; ++i) {
    const int fi = fine.wrap(lat.mode(i));
    for (int j = 0; j < n; ++j) {
      const int fj = fine.wrap(lat.mode(j));
      for (int k = 0; k < n; ++k) {
        const int fk = fine.wrap(lat.mode(k));
        const Eigen::Index src = lat.flat(i, j, k);
        const Eigen::Index dst = fine.flat(fi, fj, fk);
        out.u[dst] = y.u[src];
        out.v[dst] = y.v[src];
      }
    }
  }
  return out;
}
}  // namespace

TrilinearSampler::TrilinearSampler(const SpectralState& y, const Fft3& fft, int upsample)
    : fine_(y.lattice.n() * upsample, y.lattice.h() / upsample) {
  const SpectralState ref = upsample_spectrum(y, upsample);
  std::unique_ptr<Fft3> own;
  const Fft3* engine = &fft;
  if (upsample != 1) {
    own = std::make_unique<Fft3>(fine_);
    engine = own.get();
  }
  u_ = engine->inverse_to_real(ref.u);
  v_ = engine->inverse_to_real(ref.v);
  for (int a = 0; a < 3; ++a)
    gu_[a] = engine->inverse_to_real(derivative_spectrum(fine_, ref.u, a));
}

TrilinearSampler::TrilinearSampler(const FieldState& y, const Fft3& fft)
    : fine_(y.lattice) {
  u_ = y.u;
  v_ = y.v;
  const ComplexField uhat = fft.forward_real(y.u);
  for (int a = 0; a < 3; ++a)
    gu_[a] = fft.inverse_to_real(derivative_spectrum(fine_, uhat, a));
}

double TrilinearSampler::interp(const RealField& f, const Vec3& p) const {
  const int n = fine_.n();
  const double h = fine_.h();
  double w[3], base[3];
  int i0[3];
  for (int a = 0; a < 3; ++a) {
    const double s = p[a] / h;
    base[a] = std::floor(s);
    w[a] = s - base[a];
    i0[a] = static_cast<int>(base[a]) % n;
    if (i0[a] < 0) i0[a] += n;
  }
  const int i1 = (i0[0] + 1) % n, j1 = (i0[1] + 1) % n, k1 = (i0[2] + 1) % n;
  const double wx = w[0], wy = w[1], wz = w[2];
  auto at = [&](int i, int j, int k) { return f[fine_.flat(i, j, k)]; };
  return (1 - wx) * ((1 - wy) * ((1 - wz) * at(i0[0], i0[1], i0[2]) + wz * at(i0[0], i0[1], k1)) +
                     wy * ((1 - wz) * at(i0[0], j1, i0[2]) + wz * at(i0[0], j1, k1))) +
         wx * ((1 - wy) * ((1 - wz) * at(i1, i0[1], i0[2]) + wz * at(i1, i0[1], k1)) +
               wy * ((1 - wz) * at(i1, j1, i0[2]) + wz * at(i1, j1, k1)));
}

PointSample TrilinearSampler::sample(const Vec3& p) const {
  PointSample out;
  out.u0 = interp(u_, p);
  out.v0 = interp(v_, p);
  out.grad_u0 = Vec3(interp(gu_[0], p), interp(gu_[1], p), interp(gu_[2], p));
  return out;
}

SpectralState bandlimit(const SpectralState& y, int mmax) {
  SpectralState out(y.lattice);
  const Lattice& lat = y.lattice;
  const int n = lat.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (std::abs(lat.mode(i)) <= mmax && std::abs(lat.mode(j)) <= mmax &&
            std::abs(lat.mode(k)) <= mmax) {
          const Eigen::Index idx = lat.flat(i, j, k);
          out.u[idx] = y.u[idx];
          out.v[idx] = y.v[idx];
        }
      }
    }
  }
  return out;
}

SpectralState sample_bandlimited_state(const Lattice& lat, int mmax, RngStream& rng) {
  RealField flat_density = RealField::Zero(lat.size());
  const int n = lat.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (std::abs(lat.mode(i)) <= mmax && std::abs(lat.mode(j)) <= mmax &&
            std::abs(lat.mode(k)) <= mmax)
          flat_density[lat.flat(i, j, k)] = 1.0;
  MeasureSpec spec{SpectralDensity{lat, flat_density},
                   SpectralDensity{lat, flat_density}};
  return sample_homogeneous_spectral(spec, rng);
}

double evolve_kirchhoff(const FieldSampler& sampler, const Lattice& lat, const Vec3& x,
                        double t, const SphereQuadrature& quad) {
  if (!(t > 0.0)) throw std::invalid_argument("Kirchhoff evaluation needs t > 0");
  if (!(t < lat.side() / 2 - lat.h()))
    throw std::invalid_argument("light cone would wrap around the torus");
  double acc = 0.0;
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const Vec3& omega = quad.nodes[q];
    const PointSample s = sampler.sample(x + t * omega);
    acc += quad.weights[q] * (s.u0 + t * s.v0 + t * omega.dot(s.grad_u0));
  }
  return acc / (4.0 * std::numbers::pi);
}

}  // namespace wavemc
