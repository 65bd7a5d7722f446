#include "wavemc/experiment.hpp"

#include "wavemc/pushforward.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

#include "wavemc/io.hpp"

namespace wavemc {

namespace {

std::function<double(double)> tanh_map(double scale) {
  if (scale == 0.0) return [](double w) { return w; };
  return [scale](double w) { return std::tanh(scale * w) / scale; };
}

MeasureSpec example_measure(const ExperimentConfig& cfg, double amplitude,
                            const Lattice& lat) {
  if (cfg.balanced) return equilibrium_example_spec(cfg.r0, cfg.n_exp, amplitude, lat);
  SpectralDensity base = spectral_density_example(cfg.r0, cfg.n_exp, lat);
  SpectralDensity s00(lat, (cfg.u_weight * amplitude * base.values).eval());
  SpectralDensity s11(lat, (amplitude * base.values).eval());
  return MeasureSpec{std::move(s00), std::move(s11)};
}

}  // namespace

ExperimentSetup build_experiment(const ExperimentConfig& cfg) {
  Lattice lat(cfg.n, cfg.h);
  const Fft3 fft(lat);

  std::optional<TwoTempSpec> splice;
  std::optional<LimitCorrelations> qinf;
  Vec3 jpred = Vec3::Zero();
  StateFactory factory;

  switch (cfg.kind) {
    case MeasureKind::example: {
      MeasureSpec minus = example_measure(cfg, cfg.amp_minus, lat);
      MeasureSpec plus = example_measure(cfg, cfg.amp_plus, lat);
      splice.emplace(minus, plus, cfg.half_width_a);
      qinf = limit_correlations(CorrelationSet::diagonal(minus),
                                CorrelationSet::diagonal(plus));
      jpred = limit_mean_current(*qinf);
      factory = gaussian_splice_factory(*splice);
      break;
    }
    case MeasureKind::gibbs_smoothed: {
      SmoothingKernel theta = radial_bump_kernel(lat, cfg.r_theta, cfg.theta_amp);
      MeasureSpec minus = gibbs_smoothed_spec(lat, cfg.temp_minus, theta, fft);
      MeasureSpec plus = gibbs_smoothed_spec(lat, cfg.temp_plus, theta, fft);
      splice.emplace(minus, plus, cfg.half_width_a);
      qinf = gibbs_limit_correlations(cfg.temp_minus, cfg.temp_plus, theta, fft);
      jpred = current_constant(theta, cfg.temp_minus, cfg.temp_plus, fft).j_vector;
      factory = gaussian_splice_factory(*splice);
      break;
    }
    case MeasureKind::non_gaussian: {
      MeasureSpec minus = example_measure(cfg, cfg.amp_minus, lat);
      MeasureSpec plus = example_measure(cfg, cfg.amp_plus, lat);
      splice.emplace(minus, plus, cfg.half_width_a);
      auto f0 = tanh_map(cfg.tanh_scale0);
      auto f1 = tanh_map(cfg.tanh_scale1);
      MeasureSpec push_minus = pushforward_spec(minus, f0, f1, fft);
      MeasureSpec push_plus = pushforward_spec(plus, f0, f1, fft);
      qinf = limit_correlations(CorrelationSet::diagonal(push_minus),
                                CorrelationSet::diagonal(push_plus));
      jpred = limit_mean_current(*qinf);
      factory = pushforward_splice_factory(*splice, f0, f1);
      break;
    }
  }

  ExperimentSetup setup{lat,
                        std::move(*splice),
                        std::move(factory),
                        ProbeSet{},
                        std::move(*qinf),
                        jpred,
                        {},
                        {}};

  for (const auto& p : cfg.pairs)
    setup.probes.pairs.push_back(
        {Index3{lat.wrap(p[0]), lat.wrap(p[1]), lat.wrap(p[2])},
         Index3{lat.wrap(p[3]), lat.wrap(p[4]), lat.wrap(p[5])}});
  for (const auto& p : cfg.current_pts)
    setup.probes.current_points.push_back(
        {Index3{lat.wrap(p[0]), lat.wrap(p[1]), lat.wrap(p[2])}});
  setup.probes.energy_radii = cfg.energy_radii;
  setup.probes.transverse_average = cfg.transverse_average;
  for (const auto& f : cfg.functionals)
    setup.probes.functionals.push_back(bump_test_function(
        lat, f.component, Vec3(f.center[0], f.center[1], f.center[2]), f.radius,
        f.amplitude));

  for (const TestFunction& psi : setup.probes.functionals)
    setup.qform.push_back(quadratic_form_Qinf(psi, setup.q_infinity, fft));

  for (const auto& pr : setup.probes.pairs) {
    const Index3 off{lat.wrap(pr.x[0] - pr.y[0]), lat.wrap(pr.x[1] - pr.y[1]),
                     lat.wrap(pr.x[2] - pr.y[2])};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        setup.pair_pred.push_back(setup.q_infinity.value(i, j, off, fft));
  }
  return setup;
}

namespace {

CheckResult convergence_check(const ExperimentConfig& cfg, const ExperimentSetup& setup,
                              const ObservableLayout& layout, const EnsembleStats& stats) {
  CheckResult out{"q11_convergence", true, 0.0, 0.0, ""};
  const std::size_t n_times = cfg.times.size();
  for (std::size_t p = 0; p < setup.probes.pairs.size(); ++p) {
    const double pred = setup.pair_pred[4 * p + 3];
    double prev = 0.0, prev_err = 0.0;
    for (std::size_t ti = 0; ti < n_times; ++ti) {
      const Estimate est = estimate_slot(stats, layout.pair_slot(ti, p, 1, 1));
      const double dist = std::abs(est.value - pred);
      if (ti > 0 && dist > prev + prev_err + est.stderr_value) {
        out.pass = false;
        out.detail += "distance increased at t" + std::to_string(ti) + "; ";
      }
      prev = dist;
      prev_err = est.stderr_value;
      if (ti + 1 == n_times) {
        const double band =
            std::max(3.0 * est.stderr_value, cfg.checks.q11_band_rel * std::abs(pred));
        out.value = dist;
        out.threshold = band;
        if (dist > band) {
          out.pass = false;
          out.detail += "final distance outside band; ";
        }
      }
    }
  }
  return out;
}

}  // namespace

ExperimentResults run_experiment(const ExperimentConfig& cfg, const ExperimentSetup& setup) {
  EnsembleRunConfig rc{setup.lattice, cfg.times, cfg.samples, cfg.seed, cfg.workers};
  ObservableLayout layout(setup.probes, cfg.times.size());
  EnsembleStats stats = run_ensemble(rc, setup.factory, setup.probes, layout);
  ExperimentResults res{layout, std::move(stats), {}, true};

  const auto& ck = cfg.checks;
  const std::size_t last = cfg.times.size() - 1;
  const double m = static_cast<double>(cfg.samples);

  if (ck.q11_convergence)
    res.checks.push_back(convergence_check(cfg, setup, layout, res.stats));

  for (std::size_t c = 0; c < setup.probes.current_points.size(); ++c) {
    const Estimate j1 = estimate_slot(res.stats, layout.current_slot(last, c, 0));
    const Estimate j2 = estimate_slot(res.stats, layout.current_slot(last, c, 1));
    const Estimate j3 = estimate_slot(res.stats, layout.current_slot(last, c, 2));
    if (ck.current_match) {
      const double pred = setup.current_prediction[2];
      const double band =
          std::max(ck.zero_band_sigmas * j3.stderr_value, ck.current_band_rel * std::abs(pred));
      const double dist = std::abs(j3.value - pred);
      res.checks.push_back({"current_match#" + std::to_string(c), dist <= band, dist,
                            band, "j3 vs -C_theta (T+ - T-)"});
    }
    if (ck.current_sign) {
      const double pred = setup.current_prediction[2];
      const double z = pred < 0 ? -j3.value / j3.stderr_value : j3.value / j3.stderr_value;
      res.checks.push_back({"current_sign#" + std::to_string(c),
                            z >= ck.current_sign_min_z, z, ck.current_sign_min_z,
                            "z-score of j3 against 0 in the predicted direction"});
    }
    if (ck.transverse_current_zero) {
      const double z1 = std::abs(j1.value) / std::max(j1.stderr_value, 1e-300);
      const double z2 = std::abs(j2.value) / std::max(j2.stderr_value, 1e-300);
      const double z = std::max(z1, z2);
      res.checks.push_back({"transverse_current_zero#" + std::to_string(c),
                            z <= ck.zero_band_sigmas, z, ck.zero_band_sigmas, ""});
    }
    if (ck.currents_zero) {
      double worst = 0.0;
      for (const Estimate& e : {j1, j2, j3})
        worst = std::max(worst, std::abs(e.value) / std::max(e.stderr_value, 1e-300));
      res.checks.push_back({"currents_zero#" + std::to_string(c),
                            worst <= ck.zero_band_sigmas, worst, ck.zero_band_sigmas, ""});
    }
  }

  if (ck.cross_corr_zero) {
    double worst = 0.0;
    for (std::size_t p = 0; p < setup.probes.pairs.size(); ++p) {
      for (int comp : {1, 2}) {  // q01, q10
        const Estimate est =
            estimate_slot(res.stats, layout.pair_slot(last, p, comp / 2, comp % 2));
        worst = std::max(worst, std::abs(est.value) / std::max(est.stderr_value, 1e-300));
      }
    }
    res.checks.push_back(
        {"cross_corr_zero", worst <= ck.zero_band_sigmas, worst, ck.zero_band_sigmas, ""});
  }

  for (std::size_t f = 0; f < setup.probes.functionals.size(); ++f) {
    const SlotAccumulator& acc = res.stats.slots[layout.functional_slot(last, f)];
    if (ck.char_functional) {
      const std::complex<double> mu = acc.char_mean();
      const double target = std::exp(-0.5 * setup.qform[f]);
      const double dist = std::abs(mu - std::complex<double>(target, 0.0));
      const double band = ck.char_band_factor / std::sqrt(m);
      res.checks.push_back({"char_functional#" + std::to_string(f), dist <= band, dist,
                            band, "|mu_hat - exp(-Q_inf/2)|"});
    }
    if (ck.gaussianity) {
      const double zs = std::abs(acc.skewness()) / std::sqrt(6.0 / m);
      const double zk = std::abs(acc.excess_kurtosis()) / std::sqrt(24.0 / m);
      const double worst = std::max(zs, zk);
      res.checks.push_back({"gaussianity#" + std::to_string(f),
                            worst <= ck.gauss_ref_sigmas, worst, ck.gauss_ref_sigmas,
                            "max of skewness/kurtosis reference z-scores"});
    }
  }
  if (ck.kurtosis_nonzero_t0) {
    double best = 0.0;
    for (std::size_t f = 0; f < setup.probes.functionals.size(); ++f) {
      const SlotAccumulator& acc = res.stats.slots[layout.functional_slot(0, f)];
      best = std::max(best, std::abs(acc.excess_kurtosis()) / std::sqrt(24.0 / m));
    }
    res.checks.push_back({"kurtosis_nonzero_t0", best >= ck.kurtosis_min_z, best,
                          ck.kurtosis_min_z, "max |kurtosis| z-score at t=0"});
  }

  for (const CheckResult& c : res.checks) res.all_pass = res.all_pass && c.pass;
  return res;
}

void write_results_csv(const std::string& path, const ExperimentConfig& cfg,
                       const ExperimentSetup& setup, const ExperimentResults& res) {
  CsvWriter csv(path);
  csv.header({"probe", "time", "estimate", "stderr", "prediction", "z"});
  const ObservableLayout& layout = res.layout;
  for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
    const std::string t = CsvWriter::num(cfg.times[ti]);
    for (std::size_t p = 0; p < setup.probes.pairs.size(); ++p) {
      const char* comps[4] = {"q00", "q01", "q10", "q11"};
      for (int c = 0; c < 4; ++c) {
        const Estimate est = estimate_slot(res.stats, layout.pair_slot(ti, p, c / 2, c % 2));
        const double pred = setup.pair_pred[4 * p + c];
        csv.row({"pair" + std::to_string(p) + "/" + comps[c], t, CsvWriter::num(est.value),
                 CsvWriter::num(est.stderr_value), CsvWriter::num(pred),
                 CsvWriter::num(est.z(pred))});
      }
    }
    for (std::size_t f = 0; f < setup.probes.functionals.size(); ++f) {
      const SlotAccumulator& acc = res.stats.slots[layout.functional_slot(ti, f)];
      const std::complex<double> mu = acc.char_mean();
      const double target = std::exp(-0.5 * setup.qform[f]);
      const double err = 1.0 / std::sqrt(static_cast<double>(std::max<std::int64_t>(1, acc.count)));
      csv.row({"fn" + std::to_string(f) + "/char", t, CsvWriter::num(mu.real()),
               CsvWriter::num(err), CsvWriter::num(target),
               CsvWriter::num(std::abs(mu - std::complex<double>(target, 0)) / err)});
      csv.row({"fn" + std::to_string(f) + "/skew", t, CsvWriter::num(acc.skewness()),
               CsvWriter::num(std::sqrt(6.0 / std::max<std::int64_t>(1, acc.count))),
               "0", CsvWriter::num(acc.skewness() / std::sqrt(6.0 / std::max<std::int64_t>(1, acc.count)))});
      csv.row({"fn" + std::to_string(f) + "/exkurt", t,
               CsvWriter::num(acc.excess_kurtosis()),
               CsvWriter::num(std::sqrt(24.0 / std::max<std::int64_t>(1, acc.count))), "0",
               CsvWriter::num(acc.excess_kurtosis() /
                              std::sqrt(24.0 / std::max<std::int64_t>(1, acc.count)))});
    }
    for (std::size_t c = 0; c < setup.probes.current_points.size(); ++c) {
      for (int ax = 0; ax < 3; ++ax) {
        const Estimate est = estimate_slot(res.stats, layout.current_slot(ti, c, ax));
        const double pred = setup.current_prediction[ax];
        csv.row({"cur" + std::to_string(c) + "/j" + std::to_string(ax + 1), t,
                 CsvWriter::num(est.value), CsvWriter::num(est.stderr_value),
                 CsvWriter::num(pred), CsvWriter::num(est.z(pred))});
      }
    }
    for (std::size_t e = 0; e < setup.probes.energy_radii.size(); ++e) {
      const Estimate est = estimate_slot(res.stats, layout.energy_slot(ti, e));
      csv.row({"energyR" + CsvWriter::num(setup.probes.energy_radii[e]), t,
               CsvWriter::num(est.value), CsvWriter::num(est.stderr_value), "", ""});
    }
  }
}

void write_summary_json(const std::string& path, const ExperimentConfig& cfg,
                        const ExperimentResults& res) {
  nlohmann::json j;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(cfg.config_hash));
  j["config_hash"] = hash;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["artifact"] = "wavemc v1";
  j["all_pass"] = res.all_pass;
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : res.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"value", c.value},
                           {"threshold", c.threshold},
                           {"detail", c.detail}});
  }
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

}  // namespace wavemc
