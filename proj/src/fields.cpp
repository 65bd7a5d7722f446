#include "wavemc/fields.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace wavemc {

TwoTempSpec::TwoTempSpec(MeasureSpec m, MeasureSpec p, double a)
    : minus(std::move(m)), plus(std::move(p)), half_width_a(a) {
  require_same_lattice(minus.lattice(), plus.lattice());
  if (!(a > 0.0)) throw std::invalid_argument("splice half-width must be positive");
  if (!(a < minus.lattice().side() / 4))
    throw std::invalid_argument("splice half-width must satisfy a < L/4");
}

SmoothingKernel::SmoothingKernel(const Lattice& lat, RealField th, double r, bool axial)
    : lattice(lat), theta(std::move(th)), support_radius(r), axially_symmetric(axial) {
  if (!(r < lat.side() / 8))
    throw std::invalid_argument("kernel support must satisfy r_theta < L/8");
}

double example_spectral_factor(double z, double r0, int n_exp) {
  const double a = r0 / std::sqrt(3.0);
  if (std::abs(z) < 1e-7) {
    // Taylor limit (1 - cos(a z))/z^2 -> a^2/2
    return std::pow(a * a / 2.0, n_exp);
  }
  return std::pow((1.0 - std::cos(a * z)) / (z * z), n_exp);
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Centered cardinal B-spline of order m (support [-m/2, m/2]).
double bspline_centered(double u, int m) {
  const double t = u + m / 2.0;
  if (t <= 0.0 || t >= m) return 0.0;
  double acc = 0.0;
  for (int j = 0; j <= m; ++j) {
    const double base = t - j;
    if (base <= 0.0) break;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binomial(m, j) * std::pow(base, m - 1);
  }
  double fact = 1.0;
  for (int i = 2; i <= m - 1; ++i) fact *= i;
  return acc / fact;
}

}  // namespace

double example_correlation_factor_1d(double s, double r0, int n_exp) {
  const double a = r0 / std::sqrt(3.0);
  return std::pow(a * a / 2.0, n_exp) * bspline_centered(s / a, 2 * n_exp) / a;
}

double example_support_radius(double r0, int n_exp) { return n_exp * r0; }

SpectralDensity spectral_density_example(double r0, int n_exp, const Lattice& lat) {
  if (n_exp < 1) throw std::invalid_argument("N must be >= 1");
  if (!(r0 > 0.0)) throw std::invalid_argument("r0 must be positive");
  const double per_axis = n_exp * r0 / std::sqrt(3.0);
  if (!(per_axis < lat.side() / 2))
    throw std::invalid_argument("correlation support does not fit in the cell");

  const int n = lat.n();
  // 1D transform of the exactly sampled correlation factor.  Computed as a
  // direct cosine sum (n is small); even and nonnegative by construction --
  // the lattice values are the alias-folding of the everywhere-nonnegative
  // continuum factor f(z).
  RealField g(n);
  for (int j = 0; j < n; ++j) g[j] = example_correlation_factor_1d(lat.coord(j), r0, n_exp);
  RealField s1(n);
  for (int m = 0; m < n; ++m) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += g[j] * std::cos(lat.freq(m) * lat.coord(j));
    s1[m] = std::max(0.0, lat.h() * acc);  // clamp round-off
  }
  SpectralDensity out(lat);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out.values[lat.flat(i, j, k)] = s1[i] * s1[j] * s1[k];
  return out;
}

MeasureSpec equilibrium_example_spec(double r0, int n_exp, double amplitude,
                                     const Lattice& lat) {
  SpectralDensity s00 = spectral_density_example(r0, n_exp, lat);
  s00.values *= amplitude;
  SpectralDensity s11(lat, (lat.k_squared() * s00.values).eval());
  return MeasureSpec{std::move(s00), std::move(s11)};
}

double cutoff_profile(double s, double a) {
  if (s <= -a) return 0.0;
  if (s >= a) return 1.0;
  const double t = (s + a) / (2.0 * a);
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

SpectralState sample_homogeneous_spectral(const MeasureSpec& spec, RngStream& rng) {
  const Lattice& lat = spec.lattice();
  SpectralState state(lat);
  const double vol = lat.volume();
  const int n = lat.n();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  auto fill = [&](ComplexField& out, const RealField& s) {
    Eigen::Index idx = 0;
    for (int i = 0; i < n; ++i) {
      const int mi = lat.wrap(-i);
      for (int j = 0; j < n; ++j) {
        const int mj = lat.wrap(-j);
        for (int k = 0; k < n; ++k, ++idx) {
          const int mk = lat.wrap(-k);
          const Eigen::Index mirror = lat.flat(mi, mj, mk);
          if (idx < mirror) {
            const double g1 = rng.normal();
            const double g2 = rng.normal();
            const double amp = std::sqrt(s[idx] * vol);
            out[idx] = std::complex<double>(amp * g1 * inv_sqrt2, amp * g2 * inv_sqrt2);
            // mirror share the draw; densities are even so the amplitude matches
            const double amp_m = std::sqrt(s[mirror] * vol);
            out[mirror] = std::complex<double>(amp_m * g1 * inv_sqrt2, -amp_m * g2 * inv_sqrt2);
          } else if (idx == mirror) {
            // self-conjugate mode: real normal, doubled variance convention
            out[idx] = std::sqrt(s[idx] * vol) * rng.normal();
          }
        }
      }
    }
  };
  fill(state.u, spec.s00.values);
  fill(state.v, spec.s11.values);
  return state;
}

FieldState sample_homogeneous(const Lattice& lat, const MeasureSpec& spec,
                              RngStream& rng, const Fft3& fft) {
  require_same_lattice(lat, spec.lattice());
  SpectralState sp = sample_homogeneous_spectral(spec, rng);
  return FieldState(lat, fft.inverse_to_real(sp.u), fft.inverse_to_real(sp.v));
}

FieldState splice_two_temperature(const FieldState& y_minus, const FieldState& y_plus,
                                  const TwoTempSpec& spec) {
  require_same_lattice(y_minus.lattice, y_plus.lattice);
  require_same_lattice(y_minus.lattice, spec.lattice());
  const Lattice& lat = y_minus.lattice;
  const int n = lat.n();
  RealField zp(n), zm(n);
  for (int k = 0; k < n; ++k) {
    zp[k] = cutoff_profile(lat.coord(k), spec.half_width_a);
    zm[k] = cutoff_profile(-lat.coord(k), spec.half_width_a);
  }
  FieldState out(lat);
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k, ++idx) {
        out.u[idx] = zm[k] * y_minus.u[idx] + zp[k] * y_plus.u[idx];
        out.v[idx] = zm[k] * y_minus.v[idx] + zp[k] * y_plus.v[idx];
      }
    }
  }
  return out;
}

FieldState sample_spliced(const TwoTempSpec& spec, RngStream& rng, const Fft3& fft) {
  FieldState y_minus = sample_homogeneous(spec.lattice(), spec.minus, rng, fft);
  FieldState y_plus = sample_homogeneous(spec.lattice(), spec.plus, rng, fft);
  return splice_two_temperature(y_minus, y_plus, spec);
}

FieldState pushforward_non_gaussian(const FieldState& y,
                                    const std::function<double(double)>& f0,
                                    const std::function<double(double)>& f1) {
  FieldState out(y.lattice);
  for (Eigen::Index i = 0; i < y.u.size(); ++i) {
    out.u[i] = f0(y.u[i]);
    out.v[i] = f1(y.v[i]);
  }
  return out;
}

RealField kernel_power_spectrum(const SmoothingKernel& theta, const Fft3& fft) {
  ComplexField th = fft.forward_real(theta.theta);
  return th.abs2();
}

MeasureSpec gibbs_smoothed_spec(const Lattice& lat, double temperature,
                                const SmoothingKernel& theta, const Fft3& fft) {
  if (temperature < 0.0) throw std::invalid_argument("temperature must be >= 0");
  require_same_lattice(lat, theta.lattice);
  RealField p = kernel_power_spectrum(theta, fft);
  const RealField& k2 = lat.k_squared();
  SpectralDensity s00(lat), s11(lat);
  s11.values = temperature * p;
  s00.values = RealField::Zero(lat.size());
  for (Eigen::Index i = 0; i < lat.size(); ++i)
    if (k2[i] > 0.0) s00.values[i] = temperature * p[i] / k2[i];
  // k = 0 amplitude pinned to 0: -E* is defined modulo constants on a torus,
  // which fixes only the (irrelevant) spatial mean of u.
  return MeasureSpec{std::move(s00), std::move(s11)};
}

SmoothingKernel radial_bump_kernel(const Lattice& lat, double r_theta, double amplitude) {
  RealField th(lat.size());
  const int n = lat.n();
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i) {
    const double x = lat.coord(i);
    for (int j = 0; j < n; ++j) {
      const double y = lat.coord(j);
      for (int k = 0; k < n; ++k, ++idx) {
        const double z = lat.coord(k);
        const double w = 1.0 - (x * x + y * y + z * z) / (r_theta * r_theta);
        th[idx] = w > 0.0 ? amplitude * w * w * w : 0.0;
      }
    }
  }
  return SmoothingKernel(lat, std::move(th), r_theta, true);
}

RealField correlation_from_density(const SpectralDensity& s, const Fft3& fft) {
  return fft.inverse_to_real(s.values.cast<std::complex<double>>());
}

}  // namespace wavemc
