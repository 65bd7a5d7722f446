#include "wavemc/fft3.hpp"

#include <fftw3.h>

#include <mutex>

namespace wavemc {

namespace {
std::mutex planner_mutex;  // fftw plan creation is not thread-safe
}

Fft3::Fft3(const Lattice& lattice) : lattice_(lattice) {
  const int n = lattice_.n();
  ComplexField scratch(lattice_.size());
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  std::lock_guard<std::mutex> lock(planner_mutex);
  // FFTW_FORWARD carries e^{-i...}: that is our *inverse* direction.
  plan_bwd_ = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_fwd_ = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Fft3::~Fft3() {
  std::lock_guard<std::mutex> lock(planner_mutex);
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void Fft3::forward(ComplexField& field) const {
  auto* buf = reinterpret_cast<fftw_complex*>(field.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), buf, buf);
  field *= lattice_.cell_volume();
}

void Fft3::inverse(ComplexField& field) const {
  auto* buf = reinterpret_cast<fftw_complex*>(field.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), buf, buf);
  field *= 1.0 / lattice_.volume();
}

ComplexField Fft3::forward_real(const RealField& field) const {
  ComplexField out = field.cast<std::complex<double>>();
  forward(out);
  return out;
}

RealField Fft3::inverse_to_real(const ComplexField& spectrum) const {
  ComplexField tmp = spectrum;
  inverse(tmp);
  return tmp.real();
}

double Fft3::inverse_imag_norm(const ComplexField& spectrum) const {
  ComplexField tmp = spectrum;
  inverse(tmp);
  return tmp.imag().abs().maxCoeff();
}

ComplexField derivative_spectrum(const Lattice& lat, const ComplexField& fhat,
                                 int axis) {
  ComplexField out(fhat.size());
  const int n = lat.n();
  const std::complex<double> mi(0.0, -1.0);
  Eigen::Index idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k, ++idx) {
        const int m = axis == 0 ? i : (axis == 1 ? j : k);
        out[idx] = mi * lat.freq(m) * fhat[idx];
      }
    }
  }
  return out;
}

}  // namespace wavemc
