#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "smcodec/image.hpp"
#include "smcodec/permutation.hpp"

namespace smc {

// Keying arrangements: Standard shares only the permutation seed between
// Alice and Bob; SecretSubsampler additionally treats the row-selection seed
// as a secret between the channel coder and Bob (it is then withheld from the
// stream header); FullDFR means the sender drives sampling with her own seeds
// and there is no separate channel-coder key.
enum class KeyMode : std::uint8_t { Standard = 0, SecretSubsampler = 1, FullDFR = 2 };

struct CipherKey {
  std::uint64_t r_seed = 0;
  KeyMode mode = KeyMode::Standard;
  std::optional<std::uint64_t> d_seed;  // required in SecretSubsampler mode

  void validate() const {
    if (mode == KeyMode::SecretSubsampler && !d_seed.has_value())
      throw std::invalid_argument(
          "CipherKey: SecretSubsampler mode needs a d_seed");
  }
};

// Global pixel permutation; dimensions and histogram are unchanged.
inline ImageBuffer encrypt(const ImageBuffer& img, const CipherKey& key) {
  key.validate();
  const PermutationMap p = make_permutation(key.r_seed, img.size());
  ImageBuffer out(img.width(), img.height());
  const std::uint8_t* src = img.pixels.data();
  std::uint8_t* dst = out.pixels.data();
  for (Eigen::Index i = 0; i < img.size(); ++i) dst[i] = src[p.forward[i]];
  return out;
}

inline ImageBuffer decrypt(const ImageBuffer& img, const CipherKey& key) {
  key.validate();
  const PermutationMap p = make_permutation(key.r_seed, img.size());
  ImageBuffer out(img.width(), img.height());
  const std::uint8_t* src = img.pixels.data();
  std::uint8_t* dst = out.pixels.data();
  for (Eigen::Index i = 0; i < img.size(); ++i) dst[p.forward[i]] = src[i];
  return out;
}

// log2 of the brute-force key count: n! alone, or n! + C(n, m) when the row
// subset is also secret. Evaluated through lgamma to stay finite at n ~ 2^18.
inline double key_space_bits(Eigen::Index n,
                             std::optional<Eigen::Index> m = std::nullopt) {
  if (n < 1) throw std::invalid_argument("key_space_bits: n must be >= 1");
  const double ln2 = std::log(2.0);
  const double log2_fact = std::lgamma(static_cast<double>(n) + 1.0) / ln2;
  if (!m.has_value()) return log2_fact;
  if (*m < 1 || *m > n) throw std::invalid_argument("key_space_bits: bad m");
  const double log2_choose =
      (std::lgamma(static_cast<double>(n) + 1.0) -
       std::lgamma(static_cast<double>(*m) + 1.0) -
       std::lgamma(static_cast<double>(n - *m) + 1.0)) /
      ln2;
  // log2(2^a + 2^b) with a >= b.
  const double a = std::max(log2_fact, log2_choose);
  const double b = std::min(log2_fact, log2_choose);
  return a + std::log2(1.0 + std::exp2(b - a));
}

}  // namespace smc
