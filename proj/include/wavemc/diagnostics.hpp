#pragma once

#include "wavemc/ensemble.hpp"
#include "wavemc/kirchhoff.hpp"
#include "wavemc/sphere.hpp"

namespace wavemc {

enum class SlabKind { room, corridor };

struct Slab {
  SlabKind kind;
  int index;      // k within its kind
  double lo, hi;  // interval in s = x3' - x3 (equivalently t*omega_3)
  double width() const { return hi - lo; }
  // zone area on the sphere of radius t: 2 pi t * width
  double area(double t) const { return 2.0 * EIGEN_PI * t * width(); }
};

// Layout a1 = -t, b_k = a_k + d, a_{k+1} = b_k + rho, b_N = t, with the
// schedule N_t = round((ln(t+1))^{1/10}), rho_t = t^{1-delta}.  N may be
// overridden; if the schedule leaves d <= 0 the room count is reduced.
struct RoomCorridorPartition {
  double t;
  double delta;
  int n_rooms;
  double rho;
  double d;
  std::vector<Slab> slabs;  // alternating room/corridor, covering [-t, t]

  std::vector<double> edges() const;
};

RoomCorridorPartition make_partition(double t, double delta, int n_override = 0);

// Test-function data prepared for slab evaluation: support points with
// psi0, psi1 and spectral grad psi1 tabulated.
struct SlabFunctional {
  std::vector<Vec3> points;
  std::vector<double> psi0, psi1;
  std::vector<Vec3> grad_psi1;
  double weight;  // h^3
};

SlabFunctional prepare_slab_functional(const TestFunction& psi, const Fft3& fft);

// I_t(Sigma) for every slab at once: nodes are binned by t*omega_3 into the
// partition intervals (node-center rule).  The integrand per node is the
// Kirchhoff three-term expression paired with psi0 plus the integrated-by-
// parts velocity terms paired with psi1 / grad psi1:
//   (1/4pi) < psi0, u0 + t v0 + t w.grad u0 >
// + (1/4pi) < psi1, v0 >  -  (t/4pi) < grad psi1, grad u0 >
// - (t/4pi) < (grad psi1 . w), v0 >.
std::vector<double> slab_variables(const FieldSampler& sampler, const SlabFunctional& psi,
                                   double t, const std::vector<double>& edges,
                                   const SphereQuadrature& quad);

// Single slab [z_lo, z_hi].
double slab_variable(const FieldSampler& sampler, const SlabFunctional& psi, double t,
                     double z_lo, double z_hi, const SphereQuadrature& quad);

// | sum of slab variables - <U(t)Y0, Psi>_spectral | / max(|spectral|, floor).
double decomposition_check(const SpectralState& y0, const FieldSampler& sampler,
                           const TestFunction& psi, const SlabFunctional& sf, double t,
                           const RoomCorridorPartition& partition,
                           const SphereQuadrature& quad);

// Raw slab samples for one diagnostics ensemble: sample index x slab index,
// one matrix per scheduled time.
struct SlabEnsemble {
  std::vector<double> times;
  std::vector<RoomCorridorPartition> partitions;
  std::vector<Eigen::MatrixXd> samples;  // rows: realizations, cols: slabs
  // <E_{t,Sigma} * v0, theta> alone, from fields clamped to |Y0| <= b
  std::vector<Eigen::MatrixXd> truncated_kernel_term;
  double clamp_level = 0.0;  // b
};

struct DiagnosticsConfig {
  Lattice lattice;
  std::vector<double> times;
  int samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  double delta = 0.5;
  int n_rooms_override = 0;
  int quad_order = 29;
  double clamp_sigmas = 4.0;  // b = clamp_sigmas * field std
  bool with_truncated = true;
};

SlabEnsemble run_slab_ensemble(const DiagnosticsConfig& cfg, const TwoTempSpec& spec,
                               const TestFunction& psi);

struct VarianceScaling {
  // per kind: fitted slope of log E|I|^2 against log(width/t) and the max
  // ratio E|I|^2 / (width/t)
  double room_slope, corridor_slope;
  double room_max_ratio, corridor_max_ratio;
  Eigen::MatrixXd table;  // rows: (t, kind, k, variance, width/t, ratio)
};

VarianceScaling variance_scaling(const SlabEnsemble& ens);

// E|I_4(Sigma)|^4 / ((b/t)^4 |Sigma|^2) per slab, where I_4 is the
// <E_{t,Sigma} * v0, psi0> term of the clamped-field functional.
Eigen::MatrixXd fourth_moment_ratios(const SlabEnsemble& ens);

// Lindeberg tail fraction per time: sum_k E[r_k^2; r_k^2 > eps sigma_t] / sigma_t
// over room variables.
std::vector<double> lindeberg_fractions(const SlabEnsemble& ens, double eps);

}  // namespace wavemc
