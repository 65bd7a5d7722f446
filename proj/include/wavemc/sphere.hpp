#pragma once

#include "wavemc/lattice.hpp"

#include <vector>

namespace wavemc {

// Quadrature rule on the unit sphere; weights sum to 4*pi and the rule
// integrates all spherical harmonics up to `order` exactly (verified at
// construction for the Gauss product family).
struct SphereQuadrature {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  int order;  // highest exactly integrated harmonic degree (0 if empirical)

  std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre x uniform-azimuth product rule exact through degree p.
// Nodes come in rings of constant omega_3 (useful for slab binning and for
// indicator integrands that depend only on the polar angle).
SphereQuadrature gauss_product_rule(int order);

// Fibonacci spiral with equal weights; no polynomial exactness degree.
SphereQuadrature fibonacci_rule(int node_count);

// Max abs error of the rule on all monomials of total degree <= deg,
// against the closed-form sphere integrals.
double monomial_exactness_error(const SphereQuadrature& quad, int deg);

// Closed form: int_{S^2} x^a y^b z^c dOmega (zero for odd exponents).
double sphere_monomial_integral(int a, int b, int c);

}  // namespace wavemc
