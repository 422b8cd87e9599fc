#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

#include "smcodec/block_transform.hpp"
#include "smcodec/permutation.hpp"
#include "smcodec/subsample.hpp"

namespace smc {

// Structurally random measurement operator: scale * D * F * R, applied
// stage-by-stage so the structural-matrix split (scale * D * F acting on an
// already-permuted signal) reuses the identical code path bit for bit.
struct ScaledOperator {
  PermutationMap permutation;   // R
  BlockTransform transform;     // F
  SubsampleSelector selector;   // D
  double scale = 1.0;           // sqrt(N / M)
};

inline ScaledOperator make_scaled_operator(std::uint64_t r_seed,
                                           std::uint64_t d_seed,
                                           const BlockTransformSpec& spec,
                                           Eigen::Index m) {
  if (spec.n < 1) throw std::invalid_argument("make_scaled_operator: n < 1");
  ScaledOperator op{make_permutation(r_seed, spec.n), BlockTransform(spec),
                    make_subsampler(d_seed, spec.n, m),
                    std::sqrt(static_cast<double>(spec.n) / static_cast<double>(m))};
  return op;
}

// Structural-matrix half: scale * D * F * x (no permutation stage).
inline Eigen::VectorXd sm_apply(const ScaledOperator& op,
                                const Eigen::Ref<const Eigen::VectorXd>& x) {
  return subsample(op.selector, op.transform.forward(x), op.scale);
}

inline Eigen::VectorXd sm_adjoint(const ScaledOperator& op,
                                  const Eigen::Ref<const Eigen::VectorXd>& y) {
  return op.transform.adjoint(subsample_adjoint(op.selector, y, op.scale));
}

inline Eigen::VectorXd srm_apply(const ScaledOperator& op,
                                 const Eigen::Ref<const Eigen::VectorXd>& x) {
  return sm_apply(op, apply_permutation(op.permutation, x));
}

inline Eigen::VectorXd srm_adjoint(const ScaledOperator& op,
                                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  return apply_inverse_permutation(op.permutation, sm_adjoint(op, y));
}

}  // namespace smc
