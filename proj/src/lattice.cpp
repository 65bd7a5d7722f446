#include "wavemc/lattice.hpp"

namespace wavemc {

Lattice::Lattice(int n_per_axis, double spacing)
    : n_(n_per_axis),
      h_(spacing),
      length_(n_per_axis * spacing),
      two_pi_over_L_(2.0 * EIGEN_PI / (n_per_axis * spacing)) {
  if (n_ < 8 || n_ % 2 != 0) throw std::invalid_argument("n must be even >= 8");
  if (!(h_ > 0.0)) throw std::invalid_argument("spacing must be positive");
}

const RealField& Lattice::k_squared() const {
  if (k_squared_.size() == 0) {
    k_squared_.resize(size());
    for (int i = 0; i < n_; ++i) {
      const double ki = freq(i);
      for (int j = 0; j < n_; ++j) {
        const double kj = freq(j);
        for (int k = 0; k < n_; ++k) {
          const double kk = freq(k);
          k_squared_[flat(i, j, k)] = ki * ki + kj * kj + kk * kk;
        }
      }
    }
  }
  return k_squared_;
}

const RealField& Lattice::k_norm() const {
  if (k_norm_.size() == 0) k_norm_ = k_squared().sqrt();
  return k_norm_;
}

Lattice make_lattice(int n, double h) { return Lattice(n, h); }

}  // namespace wavemc
