#pragma once

#include "wavemc/config.hpp"
#include "wavemc/ensemble.hpp"
#include "wavemc/limits.hpp"

#include <optional>

namespace wavemc {

// Everything derived from an ExperimentConfig: the sampling law, the probe
// plan, and the theory predictions the estimates are compared against.
struct ExperimentSetup {
  Lattice lattice;
  TwoTempSpec splice;
  StateFactory factory;
  ProbeSet probes;
  LimitCorrelations q_infinity;
  Vec3 current_prediction;        // limiting mean current vector
  std::vector<double> qform;      // Q_inf(Psi, Psi) per functional
  std::vector<double> pair_pred;  // q_inf^{ij}(x-y) per pair slot group (4 per pair)
};

ExperimentSetup build_experiment(const ExperimentConfig& cfg);

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ExperimentResults {
  ObservableLayout layout;
  EnsembleStats stats;
  std::vector<CheckResult> checks;
  bool all_pass = true;
};

ExperimentResults run_experiment(const ExperimentConfig& cfg, const ExperimentSetup& setup);

// CSV with one row per probe x time (estimate, stderr, prediction, z) and a
// JSON summary with the config hash, seed, sample count and check outcomes.
void write_results_csv(const std::string& path, const ExperimentConfig& cfg,
                       const ExperimentSetup& setup, const ExperimentResults& res);
void write_summary_json(const std::string& path, const ExperimentConfig& cfg,
                        const ExperimentResults& res);

}  // namespace wavemc
