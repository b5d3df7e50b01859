#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace triad {

// Deterministic random source. std::mt19937_64 output is fully specified by
// the standard, and the distribution helpers below avoid the
// implementation-defined std::*_distribution classes, so every stream is
// bit-reproducible across platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_u64(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  std::size_t uniform_index(std::size_t bound) {
    return static_cast<std::size_t>(uniform_u64(bound));
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform_real() < p; }

  // Standard normal via Box-Muller, one spare value cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform_real();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Derives the seed of a named sub-stream from the master seed, so components
// (split, init, sampler, ...) can be re-run in isolation reproducibly.
inline std::uint64_t substream_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 14695981039346656037ULL ^ seed;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  // splitmix64 finalizer
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

inline Rng substream(std::uint64_t seed, std::string_view name) {
  return Rng(substream_seed(seed, name));
}

}  // namespace triad
