#include "wavemc/ensemble.hpp"

#include <thread>

namespace wavemc {

ObservableLayout::ObservableLayout(const ProbeSet& probes, std::size_t n_times)
    : n_times_(n_times),
      n_pairs_(probes.pairs.size()),
      n_fn_(probes.functionals.size()),
      n_cur_(probes.current_points.size()),
      n_energy_(probes.energy_radii.size()) {
  per_time_ = 4 * n_pairs_ + n_fn_ + 3 * n_cur_ + n_energy_;
  descriptors_.reserve(per_time_ * n_times_);
  const char* comps[4] = {"q00", "q01", "q10", "q11"};
  for (std::size_t t = 0; t < n_times_; ++t) {
    for (std::size_t p = 0; p < n_pairs_; ++p)
      for (int c = 0; c < 4; ++c)
        descriptors_.push_back({"t" + std::to_string(t) + "/pair" + std::to_string(p) +
                                    "/" + comps[c],
                                false});
    for (std::size_t f = 0; f < n_fn_; ++f)
      descriptors_.push_back({"t" + std::to_string(t) + "/fn" + std::to_string(f), true});
    for (std::size_t c = 0; c < n_cur_; ++c)
      for (int a = 0; a < 3; ++a)
        descriptors_.push_back({"t" + std::to_string(t) + "/cur" + std::to_string(c) +
                                    "/j" + std::to_string(a + 1),
                                false});
    for (std::size_t e = 0; e < n_energy_; ++e)
      descriptors_.push_back(
          {"t" + std::to_string(t) + "/energy" + std::to_string(e), false});
  }
}

std::size_t ObservableLayout::pair_slot(std::size_t t, std::size_t pair, int i,
                                        int j) const {
  return t * per_time_ + 4 * pair + 2 * i + j;
}
std::size_t ObservableLayout::functional_slot(std::size_t t, std::size_t f) const {
  return t * per_time_ + 4 * n_pairs_ + f;
}
std::size_t ObservableLayout::current_slot(std::size_t t, std::size_t c, int axis) const {
  return t * per_time_ + 4 * n_pairs_ + n_fn_ + 3 * c + axis;
}
std::size_t ObservableLayout::energy_slot(std::size_t t, std::size_t e) const {
  return t * per_time_ + 4 * n_pairs_ + n_fn_ + 3 * n_cur_ + e;
}

namespace {

struct NeedFlags {
  bool u = false, v = false, grad = false;
};

NeedFlags needed_fields(const ProbeSet& probes) {
  NeedFlags f;
  for (const PairProbe& p : probes.pairs) {
    (void)p;
    f.u = true;  // all four components are recorded per pair
    f.v = true;
  }
  if (!probes.current_points.empty()) {
    f.v = true;
    f.grad = true;
  }
  if (!probes.energy_radii.empty()) {
    f.u = f.v = f.grad = true;
  }
  return f;
}

double pair_product(const Lattice& lat, const RealField& fi, const RealField& fj,
                    const Index3& x, const Index3& y, bool transverse_average) {
  if (!transverse_average) {
    return fi[lat.flat(x[0], x[1], x[2])] * fj[lat.flat(y[0], y[1], y[2])];
  }
  const int n = lat.n();
  double acc = 0.0;
  for (int a = 0; a < n; ++a) {
    const int xa = (x[0] + a) % n, ya = (y[0] + a) % n;
    for (int b = 0; b < n; ++b) {
      const int xb = (x[1] + b) % n, yb = (y[1] + b) % n;
      acc += fi[lat.flat(xa, xb, x[2])] * fj[lat.flat(ya, yb, y[2])];
    }
  }
  return acc / (static_cast<double>(n) * n);
}

}  // namespace

EnsembleStats run_ensemble(const EnsembleRunConfig& cfg, const StateFactory& factory,
                           const ProbeSet& probes, const ObservableLayout& layout) {
  if (cfg.samples < 1) throw std::invalid_argument("need at least one realization");
  const Lattice& lat = cfg.lattice;
  const std::size_t n_times = cfg.times.size();

  std::vector<PropagatorPlan> plans;
  plans.reserve(n_times);
  for (double t : cfg.times) plans.emplace_back(lat, t);

  const Fft3 fft(lat);
  // cache functional spectra once
  std::vector<ComplexField> psi0_hat, psi1_hat;
  for (const TestFunction& psi : probes.functionals) {
    psi0_hat.push_back(fft.forward_real(psi.psi0));
    psi1_hat.push_back(fft.forward_real(psi.psi1));
  }
  const NeedFlags need = needed_fields(probes);

  const int workers = std::max(1, cfg.workers);
  std::vector<EnsembleStats> partial(workers, EnsembleStats(layout.descriptors()));

  auto run_block = [&](int w, int lo, int hi) {
    EnsembleStats& acc = partial[w];
    std::vector<double> row(layout.size());
    SpectralState yt(lat);
    RealField u, v;
    std::array<RealField, 3> grad;
    for (int m = lo; m < hi; ++m) {
      RngStream rng(cfg.seed, static_cast<std::uint64_t>(m));
      const SpectralState y0 = factory(rng, fft);
      for (std::size_t ti = 0; ti < n_times; ++ti) {
        plans[ti].apply(y0, yt);
        if (need.u) u = fft.inverse_to_real(yt.u);
        if (need.v) v = fft.inverse_to_real(yt.v);
        if (need.grad) grad = spectral_gradient(lat, yt.u, fft);
        for (std::size_t p = 0; p < probes.pairs.size(); ++p) {
          const PairProbe& pr = probes.pairs[p];
          const RealField* comp[2] = {&u, &v};
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              row[layout.pair_slot(ti, p, i, j)] = pair_product(
                  lat, *comp[i], *comp[j], pr.x, pr.y, probes.transverse_average);
        }
        for (std::size_t f = 0; f < probes.functionals.size(); ++f)
          row[layout.functional_slot(ti, f)] =
              pair_with_functional_spectral(yt, psi0_hat[f], psi1_hat[f]);
        for (std::size_t c = 0; c < probes.current_points.size(); ++c) {
          const Index3& pt = probes.current_points[c].point;
          if (probes.transverse_average) {
            const int n = lat.n();
            Vec3 jv = Vec3::Zero();
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b) {
                const Eigen::Index idx =
                    lat.flat((pt[0] + a) % n, (pt[1] + b) % n, pt[2]);
                jv[0] -= v[idx] * grad[0][idx];
                jv[1] -= v[idx] * grad[1][idx];
                jv[2] -= v[idx] * grad[2][idx];
              }
            jv /= static_cast<double>(lat.n()) * lat.n();
            for (int ax = 0; ax < 3; ++ax) row[layout.current_slot(ti, c, ax)] = jv[ax];
          } else {
            const Eigen::Index idx = lat.flat(pt[0], pt[1], pt[2]);
            for (int ax = 0; ax < 3; ++ax)
              row[layout.current_slot(ti, c, ax)] = -v[idx] * grad[ax][idx];
          }
        }
        for (std::size_t e = 0; e < probes.energy_radii.size(); ++e) {
          const double r2 = probes.energy_radii[e] * probes.energy_radii[e];
          const int n = lat.n();
          double acc_e = 0.0;
          Eigen::Index idx = 0;
          for (int i = 0; i < n; ++i) {
            const double dx = lat.coord(i);
            for (int j = 0; j < n; ++j) {
              const double dy = lat.coord(j);
              for (int k = 0; k < n; ++k, ++idx) {
                const double dz = lat.coord(k);
                if (dx * dx + dy * dy + dz * dz < r2)
                  acc_e += u[idx] * u[idx] + v[idx] * v[idx] +
                           grad[0][idx] * grad[0][idx] + grad[1][idx] * grad[1][idx] +
                           grad[2][idx] * grad[2][idx];
              }
            }
          }
          row[layout.energy_slot(ti, e)] = acc_e * lat.cell_volume();
        }
      }
      acc.add_row(row);
    }
  };

  if (workers == 1) {
    run_block(0, 0, cfg.samples);
    return std::move(partial[0]);
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    const int lo = static_cast<int>(static_cast<std::int64_t>(cfg.samples) * w / workers);
    const int hi =
        static_cast<int>(static_cast<std::int64_t>(cfg.samples) * (w + 1) / workers);
    pool.emplace_back(run_block, w, lo, hi);
  }
  for (auto& th : pool) th.join();
  EnsembleStats out = std::move(partial[0]);
  for (int w = 1; w < workers; ++w) out.merge(partial[w]);
  return out;
}

StateFactory gaussian_splice_factory(const TwoTempSpec& spec) {
  return [spec](RngStream& rng, const Fft3& fft) {
    FieldState y0 = sample_spliced(spec, rng, fft);
    SpectralState out(y0.lattice);
    out.u = fft.forward_real(y0.u);
    out.v = fft.forward_real(y0.v);
    return out;
  };
}

StateFactory pushforward_splice_factory(const TwoTempSpec& spec,
                                        std::function<double(double)> f0,
                                        std::function<double(double)> f1) {
  return [spec, f0 = std::move(f0), f1 = std::move(f1)](RngStream& rng, const Fft3& fft) {
    FieldState y0 = sample_spliced(spec, rng, fft);
    SpectralState out(y0.lattice);
    for (Eigen::Index i = 0; i < y0.u.size(); ++i) {
      y0.u[i] = f0(y0.u[i]);
      y0.v[i] = f1(y0.v[i]);
    }
    out.u = fft.forward_real(y0.u);
    out.v = fft.forward_real(y0.v);
    return out;
  };
}

}  // namespace wavemc
