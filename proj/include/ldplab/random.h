#ifndef LDPLAB_RANDOM_H_
#define LDPLAB_RANDOM_H_

#include <cstdint>

namespace ldplab {

// Seedable counter-free random stream (xoshiro256++, seeded via splitmix64).
// The library owns its generator so that equal seeds give bit-identical
// report streams on every platform and compiler; std::* distributions make
// no such promise.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t NextU64();

  // Uniform double in [0, 1) with 53 random bits.
  double UniformDouble();

  // Uniform integer in [0, bound). bound must be >= 1.
  uint32_t UniformInt(uint32_t bound);

  bool Bernoulli(double p);

  // Standard normal via Box-Muller (one draw per two uniforms).
  double Normal();

 private:
  uint64_t state_[4];
};

// splitmix64 step; also the seed-derivation hash for per-task streams.
uint64_t SplitMix64(uint64_t& state);

// Derived stream seed for (base, a, b), e.g. (base seed, eps index, run
// index). Order-sensitive and collision-resistant enough for experiment
// partitioning.
uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b);

}  // namespace ldplab

#endif  // LDPLAB_RANDOM_H_
