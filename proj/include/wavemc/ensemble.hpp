#pragma once

#include "wavemc/fields.hpp"
#include "wavemc/propagate.hpp"
#include "wavemc/stats.hpp"

#include <functional>

namespace wavemc {

struct PairProbe {
  Index3 x;
  Index3 y;
};

struct PointProbe {
  Index3 point;
};

// Probe plan for one ensemble run.  Pair estimates and currents may be
// averaged over (x1, x2)-translates of the probe, which is exact variance
// reduction for laws invariant under transverse translations; x3-averaging
// is never done (it would mix the two phases).
struct ProbeSet {
  std::vector<PairProbe> pairs;
  std::vector<TestFunction> functionals;
  std::vector<PointProbe> current_points;
  std::vector<double> energy_radii;  // balls centered at the origin
  bool transverse_average = true;
};

// Draws one initial state in spectral form; called once per realization
// with that realization's private stream.
using StateFactory = std::function<SpectralState(RngStream&, const Fft3&)>;

struct EnsembleRunConfig {
  Lattice lattice;
  std::vector<double> times;
  int samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
};

// Flat slot registry for the monitored scalars of one run.
class ObservableLayout {
 public:
  ObservableLayout(const ProbeSet& probes, std::size_t n_times);

  std::size_t pair_slot(std::size_t t, std::size_t pair, int i, int j) const;
  std::size_t functional_slot(std::size_t t, std::size_t f) const;
  std::size_t current_slot(std::size_t t, std::size_t c, int axis) const;
  std::size_t energy_slot(std::size_t t, std::size_t e) const;
  const std::vector<SlotDescriptor>& descriptors() const { return descriptors_; }
  std::size_t size() const { return descriptors_.size(); }

 private:
  std::size_t n_times_, n_pairs_, n_fn_, n_cur_, n_energy_;
  std::size_t per_time_;
  std::vector<SlotDescriptor> descriptors_;
};

// Monte Carlo loop: realization m draws from RngStream(seed, m), evolves to
// each scheduled time and records all probes.  Work is split into contiguous
// stream blocks across workers and merged in stream order, so results are
// bit-identical for a fixed worker count and Neumaier-stable across counts.
EnsembleStats run_ensemble(const EnsembleRunConfig& cfg, const StateFactory& factory,
                           const ProbeSet& probes, const ObservableLayout& layout);

// Factories for the measures used in the experiments.
StateFactory gaussian_splice_factory(const TwoTempSpec& spec);
StateFactory pushforward_splice_factory(const TwoTempSpec& spec,
                                        std::function<double(double)> f0,
                                        std::function<double(double)> f1);

}  // namespace wavemc
