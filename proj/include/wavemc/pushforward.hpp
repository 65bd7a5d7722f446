#pragma once

#include "wavemc/fields.hpp"

#include <functional>
#include <vector>

namespace wavemc {

// Hermite expansion of w -> f(sigma w) against the standard normal:
// coefficients b_m = E[f(sigma Z) He_m(Z)] / sqrt(m!), so that for jointly
// Gaussian (X, Y) with Var = sigma^2 and correlation rho,
//   E[f(X) f(Y)] = sum_m b_m^2 rho^m.
std::vector<double> hermite_coefficients(const std::function<double(double)>& f,
                                         double sigma, int m_max);

// Covariance of the pushforward field f(w) given the Gaussian covariance
// q(z) of w (q[0 offset] = sigma^2).  Exact for the lattice law; compact
// support of q is preserved since every term carries a positive power of q.
RealField pushforward_correlation(const RealField& q, double sigma_sq,
                                  const std::vector<double>& coeffs);

// Spectral densities of the measure obtained by applying (f0, f1) pointwise
// to a Gaussian measure with the given diagonal densities.
MeasureSpec pushforward_spec(const MeasureSpec& base,
                             const std::function<double(double)>& f0,
                             const std::function<double(double)>& f1,
                             const Fft3& fft, int m_max = 41);

}  // namespace wavemc
