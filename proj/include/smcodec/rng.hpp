#pragma once

#include <cstdint>
#include <span>

namespace smc {

// Counter-based keyed generator (SplitMix64 finalizer over seed + counter *
// golden ratio). Output i is a pure function of (seed, i), so every draw is
// reproducible across platforms and independent of call history when
// addressed through at().
class KeyedRng {
 public:
  explicit KeyedRng(std::uint64_t seed) : seed_(seed) {}

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t at(std::uint64_t i) const { return mix(seed_ + (i + 1) * kGolden); }

  std::uint64_t next() { return at(counter_++); }

  // Draw in [0, n) via the multiply-high reduction; bias is bounded by
  // n / 2^64, negligible for the index ranges used here.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Uniform double in [0, 1), 53 mantissa bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Chains mix() over a previous hash and a new field; used to derive per-cell
// and per-stage seeds without reuse across coordinates.
inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return KeyedRng::mix(h ^ (v + KeyedRng::kGolden));
}

inline std::uint64_t hash_bytes(std::uint64_t h, std::span<const char> bytes) {
  for (char c : bytes) h = hash_combine(h, static_cast<unsigned char>(c));
  return h;
}

}  // namespace smc
