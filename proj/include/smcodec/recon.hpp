#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "smcodec/block_transform.hpp"
#include "smcodec/channel.hpp"
#include "smcodec/cipher.hpp"
#include "smcodec/codec.hpp"
#include "smcodec/permutation.hpp"
#include "smcodec/wavelet.hpp"

namespace smc {

struct SolverOptions {
  double tau = 0.0;        // <= 0 selects 0.01 * ||Theta^T y||_inf
  int max_iters = 400;
  double rel_tol = 1e-5;
  bool debias = false;
  int levels = 0;          // <= 0 selects default_levels(width, height)
};

struct DecodeResult {
  ImageBuffer image;
  std::optional<double> psnr_vs_original;
  int iterations = 0;
  std::vector<double> objective_trace;
  double tau_used = 0.0;
};

// Theta: wavelet coefficients -> received measurements,
//   s  |->  scale * rows(F(R(Psi s)))
// where rows are the encoder's selected transform rows restricted to the
// received measurement indices (in full-redundancy mode, the received rows
// of R'F). The adjoint runs the transposed stages in reverse, including the
// exact transpose of the biorthogonal synthesis.
class EffectiveOperator {
 public:
  EffectiveOperator(const StreamHeader& header,
                    const std::vector<std::uint32_t>& received_indices,
                    const CipherKey& key, int levels);

  Eigen::VectorXd apply(const Eigen::VectorXd& s) const;
  Eigen::VectorXd apply_adjoint(const Eigen::VectorXd& yr) const;

  Eigen::Index rows() const { return rows_.size(); }
  Eigen::Index cols() const { return psi_.size(); }
  const Wavelet97& wavelet() const { return psi_; }
  double scale() const { return scale_; }
  const Eigen::ArrayXi& transform_rows() const { return rows_; }

 private:
  Wavelet97 psi_;
  PermutationMap r_;
  BlockTransform f_;
  Eigen::ArrayXi rows_;  // indices into the F output, one per received value
  double scale_;
};

EffectiveOperator build_effective_operator(
    const StreamHeader& header, const std::vector<std::uint32_t>& received,
    const CipherKey& key, int levels = 0);

// Full pipeline at the receiver: depacketize, dequantize, solve, invert the
// basis and the permutation, clip to 8-bit.
DecodeResult joint_decode(const std::vector<Packet>& packets,
                          const CipherKey& key, const SolverOptions& opts,
                          const ImageBuffer* original = nullptr);

// Same pipeline fed with exact (unquantized) measurements at the given
// indices; the no-round-off experiment path and the direct-inversion hook.
DecodeResult decode_measurements(const StreamHeader& header,
                                 const std::vector<std::uint32_t>& received,
                                 const Eigen::VectorXd& wire_values,
                                 const CipherKey& key,
                                 const SolverOptions& opts,
                                 const ImageBuffer* original = nullptr);

double psnr(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace smc
