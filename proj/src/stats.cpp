#include "wavemc/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace wavemc {

void SlotAccumulator::add(double x) {
  ++count;
  s1.add(x);
  s2.add(x * x);
  if (extended) {
    s3.add(x * x * x);
    s4.add(x * x * x * x);
    c_cos.add(std::cos(x));
    c_sin.add(std::sin(x));
  }
}

void SlotAccumulator::merge(const SlotAccumulator& other) {
  count += other.count;
  s1.merge(other.s1);
  s2.merge(other.s2);
  if (extended) {
    s3.merge(other.s3);
    s4.merge(other.s4);
    c_cos.merge(other.c_cos);
    c_sin.merge(other.c_sin);
  }
}

double SlotAccumulator::mean() const { return count > 0 ? s1.value() / count : 0.0; }

double SlotAccumulator::variance() const {
  if (count < 2) return 0.0;
  const double m = mean();
  const double raw = s2.value() / count - m * m;
  return std::max(0.0, raw) * count / (count - 1);
}

double SlotAccumulator::stderr_mean() const {
  return count > 1 ? std::sqrt(variance() / count) : 0.0;
}

double SlotAccumulator::skewness() const {
  if (count < 2) return 0.0;
  const double m = mean();
  const double m2 = std::max(0.0, s2.value() / count - m * m);
  if (m2 == 0.0) return 0.0;
  const double m3 = s3.value() / count - 3.0 * m * (s2.value() / count) + 2.0 * m * m * m;
  return m3 / std::pow(m2, 1.5);
}

double SlotAccumulator::excess_kurtosis() const {
  if (count < 2) return 0.0;
  const double m = mean();
  const double r2 = s2.value() / count;
  const double r3 = s3.value() / count;
  const double r4 = s4.value() / count;
  const double m2 = std::max(0.0, r2 - m * m);
  if (m2 == 0.0) return 0.0;
  const double m4 = r4 - 4.0 * m * r3 + 6.0 * m * m * r2 - 3.0 * m * m * m * m;
  return m4 / (m2 * m2) - 3.0;
}

std::complex<double> SlotAccumulator::char_mean() const {
  if (count == 0) return {1.0, 0.0};
  return {c_cos.value() / count, c_sin.value() / count};
}

EnsembleStats::EnsembleStats(std::vector<SlotDescriptor> desc) : layout(std::move(desc)) {
  slots.resize(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) slots[i].extended = layout[i].extended;
}

void EnsembleStats::add_row(const std::vector<double>& row) {
  if (row.size() != slots.size()) throw std::invalid_argument("row size mismatch");
  for (std::size_t i = 0; i < row.size(); ++i) slots[i].add(row[i]);
}

void EnsembleStats::merge(const EnsembleStats& other) {
  if (other.slots.size() != slots.size()) throw std::invalid_argument("layout mismatch");
  for (std::size_t i = 0; i < slots.size(); ++i) slots[i].merge(other.slots[i]);
}

Estimate estimate_slot(const EnsembleStats& stats, std::size_t slot) {
  const SlotAccumulator& a = stats.slots.at(slot);
  return {a.mean(), a.stderr_mean()};
}

bool DecayProfile::nonincreasing() const {
  auto check = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] > v[i - 1] + 1e-15) return false;
    return true;
  };
  return check(nu0) && check(nu1) && check(nu2);
}

double DecayProfile::weighted_integral(int d) const {
  const std::vector<double>& nu = d == 0 ? nu0 : (d == 1 ? nu1 : nu2);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < nu.size(); ++i) {
    const double r0v = i * dr, r1v = (i + 1) * dr;
    acc += 0.5 * dr * (std::pow(1.0 + r0v, d - 1) * nu[i] + std::pow(1.0 + r1v, d - 1) * nu[i + 1]);
  }
  return acc;
}

DecayProfile compact_support_profile(double r0, double amplitude, double dr, double r_max) {
  DecayProfile p;
  p.dr = dr;
  p.r0 = r0;
  const int n = static_cast<int>(r_max / dr) + 1;
  for (int i = 0; i < n; ++i) {
    const double r = i * dr;
    const double v = r <= r0 ? amplitude : 0.0;
    p.nu0.push_back(v);
    p.nu1.push_back(v);
    p.nu2.push_back(v);
  }
  return p;
}

DecayProfile power_law_profile(double amplitude, double dr, double r_max) {
  DecayProfile p;
  p.dr = dr;
  const int n = static_cast<int>(r_max / dr) + 1;
  for (int i = 0; i < n; ++i) {
    const double r = i * dr;
    p.nu0.push_back(amplitude / (1.0 + r));
    p.nu1.push_back(amplitude / std::pow(1.0 + r, 2));
    p.nu2.push_back(amplitude / std::pow(1.0 + r, 3));
  }
  return p;
}

}  // namespace wavemc
