#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace rankstore {

/// Seeded generator used for every randomized choice in the library.
/// Draws are reduced with a plain modulus so sequences are identical on every
/// standard library (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::uint32_t below(std::uint32_t bound) { return static_cast<std::uint32_t>(engine_() % bound); }

  std::size_t index(std::size_t bound) { return static_cast<std::size_t>(engine_() % bound); }

  /// splitmix64 finalizer; derives independent child seeds from (seed, tag).
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rankstore
