#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace wavemc {

using RealField = Eigen::ArrayXd;
using ComplexField = Eigen::ArrayXcd;
using Vec3 = Eigen::Vector3d;
using Index3 = std::array<int, 3>;

// Periodic cubic grid with n points per axis, spacing h, side L = n*h.
// Real-space points x_j = j*h (j = 0..n-1, wrapped to [-L/2, L/2) where a
// centered coordinate is needed).  Dual frequencies k_j = 2*pi*m~/L with
// m~ = m for m < n/2 and m - n otherwise (standard FFT order).
//
// Transform convention used throughout:
//   forward:  fhat(k) = h^3 sum_x f(x) e^{+i k.x}
//   inverse:  f(x)    = (1/L^3) sum_k fhat(k) e^{-i k.x}
// so lattice spectra are Riemann approximations of the continuum Fourier
// transform, and d_j corresponds to multiplication of fhat by (-i k_j).
class Lattice {
 public:
  Lattice(int n_per_axis, double spacing);

  int n() const { return n_; }
  double h() const { return h_; }
  double side() const { return length_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(n_) * n_ * n_; }
  double cell_volume() const { return h_ * h_ * h_; }
  double volume() const { return length_ * length_ * length_; }

  // Flat index is row-major: idx = (i*n + j)*n + k.
  Eigen::Index flat(int i, int j, int k) const {
    return (static_cast<Eigen::Index>(i) * n_ + j) * n_ + k;
  }
  Index3 unflat(Eigen::Index idx) const {
    const int k = static_cast<int>(idx % n_);
    const int j = static_cast<int>((idx / n_) % n_);
    const int i = static_cast<int>(idx / (static_cast<Eigen::Index>(n_) * n_));
    return {i, j, k};
  }
  int wrap(int i) const {
    i %= n_;
    return i < 0 ? i + n_ : i;
  }

  // Signed mode number m~ in [-n/2, n/2) for grid index i.
  int mode(int i) const { return i < n_ / 2 ? i : i - n_; }
  double freq(int i) const { return two_pi_over_L_ * mode(i); }

  // Centered coordinate in [-L/2, L/2) for grid index i.
  double coord(int i) const {
    const double x = h_ * i;
    return x < length_ / 2 ? x : x - length_;
  }
  Vec3 point(const Index3& idx) const {
    return {coord(idx[0]), coord(idx[1]), coord(idx[2])};
  }

  // |k|^2 and |k| on the flat dual grid (computed once, shared).
  const RealField& k_squared() const;
  const RealField& k_norm() const;

  bool operator==(const Lattice& other) const {
    return n_ == other.n_ && h_ == other.h_;
  }
  bool operator!=(const Lattice& other) const { return !(*this == other); }

 private:
  int n_;
  double h_;
  double length_;
  double two_pi_over_L_;
  mutable RealField k_squared_;
  mutable RealField k_norm_;
};

inline void require_same_lattice(const Lattice& a, const Lattice& b) {
  if (a != b) throw std::invalid_argument("lattice mismatch");
}

Lattice make_lattice(int n, double h);

}  // namespace wavemc
