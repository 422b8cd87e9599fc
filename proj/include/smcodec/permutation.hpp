#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>

#include "smcodec/rng.hpp"

namespace smc {

// Seed-keyed bijection on {0..n-1}. Convention: applying the map produces
// out[i] = x[forward[i]]; the inverse scatters back, out[forward[i]] = x[i].
struct PermutationMap {
  std::uint64_t seed = 0;
  Eigen::ArrayXi forward;

  Eigen::Index size() const { return forward.size(); }
};

// Fisher-Yates over [0, n), driven by KeyedRng draws j = next_below(i + 1)
// for i = n-1 .. 1.
inline PermutationMap make_permutation(std::uint64_t seed, Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("make_permutation: n must be >= 1");
  PermutationMap p;
  p.seed = seed;
  p.forward = Eigen::ArrayXi::LinSpaced(n, 0, static_cast<int>(n - 1));
  KeyedRng rng(seed);
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(
        rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(p.forward[i], p.forward[j]);
  }
  return p;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> apply_permutation(
    const PermutationMap& p, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != p.size())
    throw std::invalid_argument("apply_permutation: length mismatch");
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) out[i] = x[p.forward[i]];
  return out;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
apply_inverse_permutation(const PermutationMap& p,
                          const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != p.size())
    throw std::invalid_argument("apply_inverse_permutation: length mismatch");
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) out[p.forward[i]] = x[i];
  return out;
}

}  // namespace smc
