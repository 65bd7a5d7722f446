#pragma once

#include <cstdint>
#include <random>

namespace wavemc {

// Reproducible per-realization random stream: (seed, stream_id) fully
// determines the draw sequence.  Distinct stream ids are decorrelated by a
// splitmix64 scramble of the pair before seeding the engine.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  double normal();   // N(0,1), Box-Muller (bit-stable for a fixed binary)
  double uniform();  // [0,1)
  std::uint64_t raw() { return engine_(); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace wavemc
