#pragma once

#include <cstdint>
#include <random>

namespace cosetlab {

// Mixes a base seed with a stream index. Used to give every trial its own
// generator so that results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Thin wrapper over mt19937_64 that only draws raw 64-bit words, so the
// sequence produced for a given seed is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // k uniform bits in the low end of the result, k <= 64.
  std::uint64_t bits(unsigned k);
  bool coin() { return (engine_() >> 63) != 0; }
  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform double in [0, 1) with 53 bits of precision.
  double uniform();
  // Seed for an independent child generator.
  std::uint64_t fork() { return derive_seed(engine_(), 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cosetlab
