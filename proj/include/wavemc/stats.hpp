#pragma once

#include "wavemc/lattice.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace wavemc {

// Neumaier-compensated running sum.  Merging appends the partial sums in
// call order, so block merges in stream order reproduce the sequential
// reduction (bitwise for the two-block case, <= 1e-12 relative in general).
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  void merge(const CompensatedSum& other) {
    add(other.sum);
    add(other.comp);
  }
  double value() const { return sum + comp; }
};

// Accumulator for one monitored scalar.  Power sums up to 4 and the
// circular sums cos/sin are tracked when `extended` is set (functionals).
struct SlotAccumulator {
  std::int64_t count = 0;
  bool extended = false;
  CompensatedSum s1, s2, s3, s4, c_cos, c_sin;

  void add(double x);
  void merge(const SlotAccumulator& other);

  double mean() const;
  double variance() const;  // unbiased
  double stderr_mean() const;
  double skewness() const;
  double excess_kurtosis() const;
  std::complex<double> char_mean() const;  // mean of exp(i x)
};

struct SlotDescriptor {
  std::string name;
  bool extended = false;
};

// Mergeable per-slot statistics over a realization stream.
struct EnsembleStats {
  std::vector<SlotDescriptor> layout;
  std::vector<SlotAccumulator> slots;

  explicit EnsembleStats(std::vector<SlotDescriptor> desc);
  EnsembleStats() = default;

  void add_row(const std::vector<double>& row);
  void merge(const EnsembleStats& other);
  std::int64_t count() const { return slots.empty() ? 0 : slots[0].count; }
};

struct Estimate {
  double value;
  double stderr_value;
  double z(double predicted) const {
    return stderr_value > 0 ? (value - predicted) / stderr_value : 0.0;
  }
};

Estimate estimate_slot(const EnsembleStats& stats, std::size_t slot);

// Monotone nonincreasing envelopes nu_d used in the mixing-decay bookkeeping;
// tabulated on a uniform grid in r.
struct DecayProfile {
  double dr;
  std::vector<double> nu0, nu1, nu2;
  double r0 = 0.0;  // support radius when the profile is compactly supported

  bool nonincreasing() const;
  // int_0^inf (1+r)^{d-1} nu_d(r) dr by the trapezoid rule over the table.
  double weighted_integral(int d) const;
};

DecayProfile compact_support_profile(double r0, double amplitude, double dr, double r_max);
DecayProfile power_law_profile(double amplitude, double dr, double r_max);

}  // namespace wavemc
