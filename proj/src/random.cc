#include "ldplab/random.h"

#include <cmath>

#include "ldplab/error.h"

namespace ldplab {

namespace {

inline uint64_t Rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b) {
  uint64_t state = base;
  uint64_t h = SplitMix64(state);
  state ^= a * 0x9e3779b97f4a7c15ULL;
  h ^= SplitMix64(state);
  state ^= b * 0xd1b54a32d192ed03ULL;
  h ^= SplitMix64(state);
  return h;
}

Rng::Rng(uint64_t seed) {
  uint64_t sm = seed;
  for (auto& word : state_) word = SplitMix64(sm);
}

uint64_t Rng::NextU64() {
  const uint64_t result = Rotl(state_[0] + state_[3], 23) + state_[0];
  const uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = Rotl(state_[3], 45);
  return result;
}

double Rng::UniformDouble() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

uint32_t Rng::UniformInt(uint32_t bound) {
  if (bound == 0) throw InvalidParameterError("UniformInt: bound must be >= 1");
  if (bound == 1) return 0;  // no draw, so d = 1 strategies reduce exactly
  // Lemire's multiply-shift with rejection of the biased region.
  uint64_t x = NextU64() >> 32;
  uint64_t m = x * bound;
  uint32_t l = static_cast<uint32_t>(m);
  if (l < bound) {
    uint32_t t = -bound % bound;
    while (l < t) {
      x = NextU64() >> 32;
      m = x * bound;
      l = static_cast<uint32_t>(m);
    }
  }
  return static_cast<uint32_t>(m >> 32);
}

bool Rng::Bernoulli(double p) { return UniformDouble() < p; }

double Rng::Normal() {
  // Box-Muller; u1 is kept away from zero so the log is finite.
  double u1 = UniformDouble();
  double u2 = UniformDouble();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace ldplab
