#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>

#include "smcodec/rng.hpp"

namespace smc {

// Random row-selection operator: m distinct indices out of [0, n), kept in
// generation order so consecutive measurements stay nearly independent.
struct SubsampleSelector {
  std::uint64_t seed = 0;
  Eigen::Index n = 0;
  Eigen::ArrayXi rows;

  Eigen::Index m() const { return rows.size(); }
};

// Partial Fisher-Yates: swap position i with a uniform draw from [i, n) and
// keep the first m entries, in that order.
inline SubsampleSelector make_subsampler(std::uint64_t seed, Eigen::Index n,
                                         Eigen::Index m) {
  if (m < 1 || m > n)
    throw std::invalid_argument("make_subsampler: need 1 <= m <= n");
  SubsampleSelector sel;
  sel.seed = seed;
  sel.n = n;
  Eigen::ArrayXi pool = Eigen::ArrayXi::LinSpaced(n, 0, static_cast<int>(n - 1));
  KeyedRng rng(seed);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto j =
        i + static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  sel.rows = pool.head(m);
  return sel;
}

inline Eigen::VectorXd subsample(const SubsampleSelector& sel,
                                 const Eigen::Ref<const Eigen::VectorXd>& x,
                                 double scale) {
  if (x.size() != sel.n)
    throw std::invalid_argument("subsample: length mismatch");
  Eigen::VectorXd out(sel.m());
  for (Eigen::Index j = 0; j < sel.m(); ++j) out[j] = scale * x[sel.rows[j]];
  return out;
}

inline Eigen::VectorXd subsample_adjoint(
    const SubsampleSelector& sel, const Eigen::Ref<const Eigen::VectorXd>& y,
    double scale) {
  if (y.size() != sel.m())
    throw std::invalid_argument("subsample_adjoint: length mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(sel.n);
  for (Eigen::Index j = 0; j < sel.m(); ++j) out[sel.rows[j]] = scale * y[j];
  return out;
}

}  // namespace smc
