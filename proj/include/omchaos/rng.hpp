#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace omchaos {

// splitmix64 step; used both as a generator and to derive independent
// sub-stream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for sweep point `index` under master seed `master`. Independent of
// execution order and of how many points run concurrently.
inline std::uint64_t point_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index + 1));
}

// Named sub-streams of one run seed (noise, gate phase, bootstrap, ...).
enum class SeedTag : std::uint64_t {
  Noise = 0x6e6f697365ULL,
  GatePhase = 0x67617465ULL,
  Bootstrap = 0x626f6f74ULL,
  TestPhases = 0x70686173ULL,
  Fixture = 0x66697874ULL,
};

inline std::uint64_t sub_seed(std::uint64_t seed, SeedTag tag) {
  return splitmix64(seed ^ static_cast<std::uint64_t>(tag));
}

// Deterministic RNG with explicit real mappings. std::*_distribution output
// is implementation-defined, so uniforms and gaussians are mapped by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller, one draw per call (the sine partner is discarded to keep the
  // stream position a pure function of the call count).
  double gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace omchaos
