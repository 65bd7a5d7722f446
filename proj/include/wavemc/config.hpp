#pragma once

#include "wavemc/lattice.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace wavemc {

// Minimal TOML-syntax reader covering the experiment schema: [tables],
// [[arrays of tables]], key = string | bool | integer | float | (nested)
// array, and # comments.  Keys are exposed flattened with dots; elements of
// an array of tables get a numeric path segment.
class TomlValue {
 public:
  using Array = std::vector<TomlValue>;
  using Storage = std::variant<std::string, bool, std::int64_t, double, Array>;

  TomlValue() : v_(std::int64_t{0}) {}
  explicit TomlValue(Storage v) : v_(std::move(v)) {}

  bool is_array() const { return std::holds_alternative<Array>(v_); }
  bool is_string() const { return std::holds_alternative<std::string>(v_); }
  bool is_number() const {
    return std::holds_alternative<std::int64_t>(v_) || std::holds_alternative<double>(v_);
  }
  const std::string& as_string() const;
  bool as_bool() const;
  std::int64_t as_int() const;
  double as_double() const;
  const Array& as_array() const;

 private:
  Storage v_;
};

class TomlDocument {
 public:
  static TomlDocument parse(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const TomlValue& at(const std::string& key) const;
  // lookup with default
  double number_or(const std::string& key, double fallback) const;
  std::int64_t int_or(const std::string& key, std::int64_t fallback) const;
  bool bool_or(const std::string& key, bool fallback) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;
  // count of [[prefix]] tables
  int table_array_size(const std::string& prefix) const;
  // apply a "dotted.key=value" override (value in TOML syntax)
  void set_override(const std::string& assignment);

  const std::map<std::string, TomlValue>& entries() const { return values_; }

 private:
  std::map<std::string, TomlValue> values_;
  std::map<std::string, int> table_counts_;
};

// FNV-1a over bytes; used to stamp outputs with the config identity.
std::uint64_t fnv1a64(const std::string& bytes);

enum class MeasureKind { example, gibbs_smoothed, non_gaussian };

struct ExperimentConfig {
  // raw document (after overrides) and its hash
  TomlDocument doc;
  std::uint64_t config_hash = 0;

  int n = 0;
  double h = 0.0;

  MeasureKind kind = MeasureKind::example;
  double r0 = 0.0;
  int n_exp = 1;
  double amp_minus = 1.0, amp_plus = 1.0;
  bool balanced = true;
  double u_weight = 0.5;  // s00 weight when not balanced
  double half_width_a = 1.0;
  double temp_minus = 1.0, temp_plus = 1.0;
  double r_theta = 1.0, theta_amp = 1.0;
  double tanh_scale0 = 1.0, tanh_scale1 = 1.0;

  std::vector<double> times;
  int samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;

  bool transverse_average = true;
  std::vector<std::array<int, 6>> pairs;        // (x, y) as grid indices
  std::vector<std::array<int, 3>> current_pts;  // grid indices
  std::vector<double> energy_radii;
  struct FunctionalSpec {
    int component = 1;
    std::array<double, 3> center{0, 0, 0};
    double radius = 1.0;
    double amplitude = 1.0;
  };
  std::vector<FunctionalSpec> functionals;

  struct Checks {
    bool q11_convergence = false;
    double q11_band_rel = 0.02;
    bool current_match = false;
    double current_band_rel = 0.05;
    bool current_sign = false;
    double current_sign_min_z = 5.0;
    bool transverse_current_zero = false;
    bool currents_zero = false;
    bool cross_corr_zero = false;
    double zero_band_sigmas = 3.0;
    bool char_functional = false;
    double char_band_factor = 5.0;  // band = factor / sqrt(M)
    bool gaussianity = false;
    double gauss_ref_sigmas = 5.0;
    bool kurtosis_nonzero_t0 = false;
    double kurtosis_min_z = 5.0;
  } checks;

  double side() const { return n * h; }
};

ExperimentConfig parse_experiment_config(const std::string& toml_text,
                                         const std::vector<std::string>& overrides = {});
ExperimentConfig load_experiment_config(const std::string& path,
                                        const std::vector<std::string>& overrides = {});

// Throws when a scheduled time, probe location and splice width together
// violate the wrap-safety bound t + |x3| + a < L/2.
void validate_wrap_safety(const ExperimentConfig& cfg);

}  // namespace wavemc
