#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace smellrole {

/// 64-bit FNV-1a; used for stage-local seed derivation and feature-order
/// fingerprints.
constexpr std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

/// Seed of the random stream owned by one pipeline stage.
constexpr std::uint64_t stage_seed(std::uint64_t seed,
                                   std::string_view stage) noexcept {
  return seed ^ fnv1a(stage);
}

/// Portable random source. std::mt19937_64 output is fixed by the standard;
/// the standard distributions are not, so bounded draws are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw = engine_();
    while (draw >= limit) {
      draw = engine_();
    }
    return draw % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace smellrole
