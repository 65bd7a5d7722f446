#include "wavemc/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wavemc {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace

SphereQuadrature gauss_product_rule(int order) {
  if (order < 1) throw std::invalid_argument("rule order must be >= 1");
  const int n_theta = order / 2 + 1;          // GL exact through degree 2n-1
  int n_phi = order + 1;                      // trapezoid exact below n_phi
  if (n_phi % 2 == 1) ++n_phi;
  std::vector<double> mu, wmu;
  gauss_legendre(n_theta, mu, wmu);

  SphereQuadrature quad;
  quad.order = order;
  quad.nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  quad.weights.reserve(quad.nodes.capacity());
  const double wphi = 2.0 * std::numbers::pi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double c = mu[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = wphi * j;
      quad.nodes.push_back(Vec3(s * std::cos(phi), s * std::sin(phi), c));
      quad.weights.push_back(wmu[i] * wphi);
    }
  }
  const double err = monomial_exactness_error(quad, order);
  if (err > 1e-11) throw std::runtime_error("sphere rule failed exactness check");
  return quad;
}

SphereQuadrature fibonacci_rule(int node_count) {
  if (node_count < 2) throw std::invalid_argument("need at least 2 nodes");
  SphereQuadrature quad;
  quad.order = 0;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double w = 4.0 * std::numbers::pi / node_count;
  for (int i = 0; i < node_count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / node_count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    quad.nodes.push_back(Vec3(r * std::cos(phi), r * std::sin(phi), z));
    quad.weights.push_back(w);
  }
  return quad;
}

double sphere_monomial_integral(int a, int b, int c) {
  if (a % 2 || b % 2 || c % 2) return 0.0;
  auto dfact = [](int m) {
    double r = 1.0;
    for (int i = m; i > 1; i -= 2) r *= i;
    return r;
  };
  return 4.0 * std::numbers::pi * dfact(a - 1) * dfact(b - 1) * dfact(c - 1) /
         dfact(a + b + c + 1);
}

double monomial_exactness_error(const SphereQuadrature& quad, int deg) {
  double worst = 0.0;
  for (int a = 0; a <= deg; ++a) {
    for (int b = 0; a + b <= deg; ++b) {
      for (int c = 0; a + b + c <= deg; ++c) {
        double acc = 0.0;
        for (std::size_t q = 0; q < quad.size(); ++q) {
          const Vec3& o = quad.nodes[q];
          acc += quad.weights[q] * std::pow(o[0], a) * std::pow(o[1], b) *
                 std::pow(o[2], c);
        }
        worst = std::max(worst, std::abs(acc - sphere_monomial_integral(a, b, c)));
      }
    }
  }
  return worst;
}

}  // namespace wavemc
