#include "wavemc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace wavemc {

RoomCorridorPartition make_partition(double t, double delta, int n_override) {
  if (!(t >= 2.0)) throw std::invalid_argument("partition needs t >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("need 0 < delta < 1");
  RoomCorridorPartition part;
  part.t = t;
  part.delta = delta;
  part.rho = std::pow(t, 1.0 - delta);
  int n = n_override > 0
              ? n_override
              : std::max(1, static_cast<int>(std::lround(
                                std::pow(std::log(t + 1.0), 0.1))));
  // shrink until rooms have positive width
  while (n > 1 && 2.0 * t - (n - 1) * part.rho <= 0.0) --n;
  part.n_rooms = n;
  part.d = (2.0 * t - (n - 1) * part.rho) / n;
  double a = -t;
  for (int k = 0; k < n; ++k) {
    part.slabs.push_back({SlabKind::room, k, a, a + part.d});
    a += part.d;
    if (k + 1 < n) {
      part.slabs.push_back({SlabKind::corridor, k, a, a + part.rho});
      a += part.rho;
    }
  }
  part.slabs.back().hi = t;  // absorb round-off in the last boundary
  return part;
}

std::vector<double> RoomCorridorPartition::edges() const {
  std::vector<double> e;
  e.reserve(slabs.size() + 1);
  e.push_back(slabs.front().lo);
  for (const Slab& s : slabs) e.push_back(s.hi);
  return e;
}

SlabFunctional prepare_slab_functional(const TestFunction& psi, const Fft3& fft) {
  const Lattice& lat = psi.lattice;
  ComplexField p1hat = fft.forward_real(psi.psi1);
  std::array<RealField, 3> g;
  for (int a = 0; a < 3; ++a)
    g[a] = fft.inverse_to_real(derivative_spectrum(lat, p1hat, a));

  SlabFunctional out;
  out.weight = lat.cell_volume();
  const int n = lat.n();
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k, ++idx) {
        const double a0 = psi.psi0[idx];
        const double a1 = psi.psi1[idx];
        const Vec3 gg(g[0][idx], g[1][idx], g[2][idx]);
        if (std::abs(a0) < 1e-14 && std::abs(a1) < 1e-14 && gg.norm() < 1e-12) continue;
        out.points.push_back(Vec3(lat.h() * i, lat.h() * j, lat.h() * k));
        out.psi0.push_back(a0);
        out.psi1.push_back(a1);
        out.grad_psi1.push_back(gg);
      }
    }
  }
  return out;
}

namespace {

int bin_of(double s, const std::vector<double>& edges) {
  if (s < edges.front() || s >= edges.back()) return -1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), s);
  return static_cast<int>(it - edges.begin()) - 1;
}

std::vector<double> slab_accumulate(const FieldSampler& sampler, const SlabFunctional& psi,
                                    double t, const std::vector<double>& edges,
                                    const SphereQuadrature& quad, bool kernel_term_only) {
  std::vector<double> bins(edges.size() - 1, 0.0);
  const bool theta_is_psi0 =
      std::any_of(psi.psi0.begin(), psi.psi0.end(), [](double v) { return v != 0.0; });
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const Vec3& omega = quad.nodes[q];
    const int b = bin_of(t * omega[2], edges);
    if (b < 0) continue;
    double acc = 0.0;
    if (kernel_term_only) {
      for (std::size_t p = 0; p < psi.points.size(); ++p) {
        const double theta = theta_is_psi0 ? psi.psi0[p] : psi.psi1[p];
        if (theta == 0.0) continue;
        acc += theta * t * sampler.sample(psi.points[p] + t * omega).v0;
      }
    } else {
      for (std::size_t p = 0; p < psi.points.size(); ++p) {
        const PointSample s = sampler.sample(psi.points[p] + t * omega);
        acc += psi.psi0[p] * (s.u0 + t * s.v0 + t * omega.dot(s.grad_u0));
        acc += psi.psi1[p] * s.v0;
        acc -= t * psi.grad_psi1[p].dot(s.grad_u0);
        acc -= t * psi.grad_psi1[p].dot(omega) * s.v0;
      }
    }
    bins[b] += quad.weights[q] * acc;
  }
  const double scale = psi.weight / (4.0 * std::numbers::pi);
  for (double& x : bins) x *= scale;
  return bins;
}

}  // namespace

std::vector<double> slab_variables(const FieldSampler& sampler, const SlabFunctional& psi,
                                   double t, const std::vector<double>& edges,
                                   const SphereQuadrature& quad) {
  return slab_accumulate(sampler, psi, t, edges, quad, false);
}

double slab_variable(const FieldSampler& sampler, const SlabFunctional& psi, double t,
                     double z_lo, double z_hi, const SphereQuadrature& quad) {
  if (!(z_hi >= z_lo)) throw std::invalid_argument("slab interval reversed");
  if (z_lo < -t - 1e-12 || z_hi > t + 1e-12)
    throw std::invalid_argument("slab outside the light cone");
  if (z_lo == z_hi) return 0.0;
  return slab_accumulate(sampler, psi, t, {z_lo, z_hi}, quad, false)[0];
}

double decomposition_check(const SpectralState& y0, const FieldSampler& sampler,
                           const TestFunction& psi, const SlabFunctional& sf, double t,
                           const RoomCorridorPartition& partition,
                           const SphereQuadrature& quad) {
  const Fft3 fft(y0.lattice);
  const SpectralState yt = evolve_spectral(y0, t);
  const double reference = pair_with_functional_spectral(
      yt, fft.forward_real(psi.psi0), fft.forward_real(psi.psi1));
  const std::vector<double> vals =
      slab_variables(sampler, sf, t, partition.edges(), quad);
  double total = 0.0;
  for (double v : vals) total += v;
  const double scale = std::max(std::abs(reference), 1e-12);
  return std::abs(total - reference) / scale;
}

SlabEnsemble run_slab_ensemble(const DiagnosticsConfig& cfg, const TwoTempSpec& spec,
                               const TestFunction& psi) {
  const Lattice& lat = cfg.lattice;
  SlabEnsemble out;
  out.times = cfg.times;
  for (double t : cfg.times)
    out.partitions.push_back(make_partition(t, cfg.delta, cfg.n_rooms_override));

  const double var_cap =
      std::max(std::max(spec.minus.s00.point_variance(), spec.minus.s11.point_variance()),
               std::max(spec.plus.s00.point_variance(), spec.plus.s11.point_variance()));
  out.clamp_level = cfg.clamp_sigmas * std::sqrt(var_cap);

  const Fft3 fft(lat);
  const SlabFunctional sf = prepare_slab_functional(psi, fft);
  const SphereQuadrature quad = gauss_product_rule(cfg.quad_order);

  const std::size_t n_times = cfg.times.size();
  for (std::size_t ti = 0; ti < n_times; ++ti) {
    const std::size_t cols = out.partitions[ti].slabs.size();
    out.samples.emplace_back(cfg.samples, cols);
    out.truncated_kernel_term.emplace_back(cfg.samples, cols);
  }

  auto run_block = [&](int lo, int hi) {
    for (int m = lo; m < hi; ++m) {
      RngStream rng(cfg.seed, static_cast<std::uint64_t>(m));
      FieldState y0 = sample_spliced(spec, rng, fft);
      SpectralState y0hat(lat);
      y0hat.u = fft.forward_real(y0.u);
      y0hat.v = fft.forward_real(y0.v);
      const TrilinearSampler sampler(y0hat, fft);

      std::unique_ptr<TrilinearSampler> clamped;
      if (cfg.with_truncated) {
        const double b = out.clamp_level;
        SpectralState ch(lat);
        ch.u = fft.forward_real(y0.u.cwiseMax(-b).cwiseMin(b).eval());
        ch.v = fft.forward_real(y0.v.cwiseMax(-b).cwiseMin(b).eval());
        clamped = std::make_unique<TrilinearSampler>(ch, fft);
      }
      for (std::size_t ti = 0; ti < n_times; ++ti) {
        const std::vector<double> edges = out.partitions[ti].edges();
        const std::vector<double> vals =
            slab_variables(sampler, sf, cfg.times[ti], edges, quad);
        for (std::size_t c = 0; c < vals.size(); ++c) out.samples[ti](m, c) = vals[c];
        if (clamped) {
          const std::vector<double> kv = slab_accumulate(
              *clamped, sf, cfg.times[ti], edges, quad, /*kernel_term_only=*/true);
          for (std::size_t c = 0; c < kv.size(); ++c)
            out.truncated_kernel_term[ti](m, c) = kv[c];
        }
      }
    }
  };

  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    run_block(0, cfg.samples);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      const int lo = static_cast<int>(static_cast<std::int64_t>(cfg.samples) * w / workers);
      const int hi =
          static_cast<int>(static_cast<std::int64_t>(cfg.samples) * (w + 1) / workers);
      pool.emplace_back(run_block, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

namespace {
double column_variance(const Eigen::MatrixXd& mat, std::size_t col) {
  const auto c = mat.col(col);
  const double m = c.mean();
  return (c.array() - m).square().sum() / std::max<Eigen::Index>(1, mat.rows() - 1);
}
}  // namespace

VarianceScaling variance_scaling(const SlabEnsemble& ens) {
  std::vector<std::array<double, 6>> rows;
  for (std::size_t ti = 0; ti < ens.times.size(); ++ti) {
    const double t = ens.times[ti];
    const auto& part = ens.partitions[ti];
    for (std::size_t c = 0; c < part.slabs.size(); ++c) {
      const Slab& s = part.slabs[c];
      const double var = column_variance(ens.samples[ti], c);
      const double wt = s.width() / t;
      rows.push_back({t, s.kind == SlabKind::room ? 0.0 : 1.0,
                      static_cast<double>(s.index), var, wt, var / wt});
    }
  }
  VarianceScaling out;
  out.table.resize(rows.size(), 6);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < 6; ++c) out.table(r, c) = rows[r][c];

  auto fit = [&](double kind, double& slope, double& max_ratio) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    max_ratio = 0.0;
    for (const auto& r : rows) {
      if (r[1] != kind || r[3] <= 0.0) continue;
      const double x = std::log(r[4]), y = std::log(r[3]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
      max_ratio = std::max(max_ratio, r[5]);
    }
    slope = n > 1 && sxx * n - sx * sx != 0.0 ? (n * sxy - sx * sy) / (n * sxx - sx * sx)
                                              : 0.0;
  };
  fit(0.0, out.room_slope, out.room_max_ratio);
  fit(1.0, out.corridor_slope, out.corridor_max_ratio);
  return out;
}

Eigen::MatrixXd fourth_moment_ratios(const SlabEnsemble& ens) {
  std::size_t total = 0;
  for (const auto& p : ens.partitions) total += p.slabs.size();
  Eigen::MatrixXd out(total, 4);  // t, kind, ratio, area
  std::size_t r = 0;
  const double b = ens.clamp_level;
  for (std::size_t ti = 0; ti < ens.times.size(); ++ti) {
    const double t = ens.times[ti];
    for (std::size_t c = 0; c < ens.partitions[ti].slabs.size(); ++c, ++r) {
      const Slab& s = ens.partitions[ti].slabs[c];
      const auto col = ens.truncated_kernel_term[ti].col(c).array();
      const double m4 = col.pow(4).mean();
      const double area = s.area(t);
      const double denom = std::pow(b / t, 4) * area * area;
      out(r, 0) = t;
      out(r, 1) = s.kind == SlabKind::room ? 0.0 : 1.0;
      out(r, 2) = denom > 0.0 ? m4 / denom : 0.0;
      out(r, 3) = area;
    }
  }
  return out;
}

std::vector<double> lindeberg_fractions(const SlabEnsemble& ens, double eps) {
  std::vector<double> out;
  for (std::size_t ti = 0; ti < ens.times.size(); ++ti) {
    const auto& part = ens.partitions[ti];
    double sigma_t = 0.0;
    for (std::size_t c = 0; c < part.slabs.size(); ++c)
      if (part.slabs[c].kind == SlabKind::room)
        sigma_t += column_variance(ens.samples[ti], c);
    double tail = 0.0;
    const double thresh = eps * sigma_t;
    for (std::size_t c = 0; c < part.slabs.size(); ++c) {
      if (part.slabs[c].kind != SlabKind::room) continue;
      const auto col = ens.samples[ti].col(c).array();
      const Eigen::ArrayXd sq = col.square();
      tail += (sq > thresh).select(sq, 0.0).mean();
    }
    out.push_back(sigma_t > 0.0 ? tail / sigma_t : 0.0);
  }
  return out;
}

}  // namespace wavemc
