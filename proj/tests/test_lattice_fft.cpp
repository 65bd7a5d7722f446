#include "wavemc/fft3.hpp"
#include "wavemc/lattice.hpp"

#include <doctest.h>

#include <numbers>

using namespace wavemc;

TEST_CASE("lattice geometry and validation") {
  const Lattice lat = make_lattice(64, 0.25);
  CHECK(lat.side() == doctest::Approx(16.0).epsilon(1e-15));
  CHECK(lat.size() == 64 * 64 * 64);

  const Lattice smallest = make_lattice(8, 1.0);
  CHECK(smallest.side() == doctest::Approx(8.0));

  CHECK_THROWS(make_lattice(7, 1.0));
  CHECK_THROWS(make_lattice(6, 1.0));
  CHECK_THROWS(make_lattice(64, 0.0));
  CHECK_THROWS(make_lattice(64, -1.0));
}

TEST_CASE("dual frequencies follow FFT order and coords are centered") {
  const Lattice lat = make_lattice(8, 0.5);
  CHECK(lat.mode(0) == 0);
  CHECK(lat.mode(3) == 3);
  CHECK(lat.mode(4) == -4);
  CHECK(lat.mode(7) == -1);
  CHECK(lat.freq(1) == doctest::Approx(2.0 * std::numbers::pi / 4.0));
  CHECK(lat.coord(0) == 0.0);
  CHECK(lat.coord(7) == doctest::Approx(-0.5));
  CHECK(lat.coord(4) == doctest::Approx(-2.0));
}

TEST_CASE("forward transform matches the plane-wave convention") {
  // f(x) = cos(k1 x1) has fhat = (L^3/2) at +-k1 under fhat = h^3 sum f e^{+ikx}
  const Lattice lat = make_lattice(16, 0.5);
  const Fft3 fft(lat);
  RealField f(lat.size());
  const double k1 = lat.freq(2);
  for (int i = 0; i < lat.n(); ++i)
    for (int j = 0; j < lat.n(); ++j)
      for (int k = 0; k < lat.n(); ++k)
        f[lat.flat(i, j, k)] = std::cos(k1 * lat.h() * i);
  ComplexField fhat = fft.forward_real(f);
  const double expected = lat.volume() / 2.0;
  CHECK(std::abs(fhat[lat.flat(2, 0, 0)] - expected) < 1e-9 * expected);
  CHECK(std::abs(fhat[lat.flat(lat.n() - 2, 0, 0)] - expected) < 1e-9 * expected);
  fhat[lat.flat(2, 0, 0)] = 0.0;
  fhat[lat.flat(lat.n() - 2, 0, 0)] = 0.0;
  CHECK(fhat.abs().maxCoeff() < 1e-9 * expected);
}

TEST_CASE("inverse undoes forward and derivative multipliers are exact") {
  const Lattice lat = make_lattice(16, 0.25);
  const Fft3 fft(lat);
  RealField f(lat.size());
  for (Eigen::Index i = 0; i < lat.size(); ++i) f[i] = std::sin(0.37 * i) + 0.2;
  const RealField back = fft.inverse_to_real(fft.forward_real(f));
  CHECK((back - f).abs().maxCoeff() < 1e-12 * f.abs().maxCoeff());

  // d3 of sin(k3 x3) is k3 cos(k3 x3), exactly on the lattice
  const double k3 = lat.freq(3);
  RealField g(lat.size()), expected(lat.size());
  for (int i = 0; i < lat.n(); ++i)
    for (int j = 0; j < lat.n(); ++j)
      for (int k = 0; k < lat.n(); ++k) {
        g[lat.flat(i, j, k)] = std::sin(k3 * lat.h() * k);
        expected[lat.flat(i, j, k)] = k3 * std::cos(k3 * lat.h() * k);
      }
  const RealField d3 =
      fft.inverse_to_real(derivative_spectrum(lat, fft.forward_real(g), 2));
  CHECK((d3 - expected).abs().maxCoeff() < 1e-10 * expected.abs().maxCoeff());
}
