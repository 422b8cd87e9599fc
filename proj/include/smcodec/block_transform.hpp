#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace smc {

enum class TransformKind : std::uint8_t { BDCT = 0, BWHT = 1 };

inline const char* transform_name(TransformKind k) {
  return k == TransformKind::BDCT ? "bdct" : "bwht";
}

// Block-diagonal orthonormal transform on a length-n signal split into
// contiguous blocks of block_size samples.
struct BlockTransformSpec {
  TransformKind kind = TransformKind::BDCT;
  Eigen::Index block_size = 32;
  Eigen::Index n = 0;
};

class BlockTransform {
 public:
  explicit BlockTransform(const BlockTransformSpec& spec) : spec_(spec) {
    if (spec.block_size < 1)
      throw std::invalid_argument("BlockTransform: block_size must be >= 1");
    if (spec.n < 1 || spec.n % spec.block_size != 0)
      throw std::invalid_argument(
          "BlockTransform: signal length must be a positive multiple of "
          "block_size");
    if (spec.kind == TransformKind::BWHT &&
        (spec.block_size & (spec.block_size - 1)) != 0)
      throw std::invalid_argument(
          "BlockTransform: BWHT block_size must be a power of two");
    if (spec.kind == TransformKind::BDCT) basis_ = dct_matrix(spec.block_size);
  }

  const BlockTransformSpec& spec() const { return spec_; }

  // Orthonormal DCT-II rows: basis(k, j) = c_k sqrt(2/B) cos(pi (2j+1) k / 2B).
  static Eigen::MatrixXd dct_matrix(Eigen::Index b) {
    Eigen::MatrixXd m(b, b);
    const double norm = std::sqrt(2.0 / static_cast<double>(b));
    for (Eigen::Index k = 0; k < b; ++k) {
      const double ck = (k == 0) ? norm / std::sqrt(2.0) : norm;
      for (Eigen::Index j = 0; j < b; ++j)
        m(k, j) = ck * std::cos(M_PI * (2.0 * j + 1.0) * k /
                                (2.0 * static_cast<double>(b)));
    }
    return m;
  }

  Eigen::VectorXd forward(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    return apply(x, /*adjoint=*/false);
  }

  Eigen::VectorXd adjoint(const Eigen::Ref<const Eigen::VectorXd>& y) const {
    return apply(y, /*adjoint=*/true);
  }

 private:
  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& x,
                        bool adjoint) const {
    if (x.size() != spec_.n)
      throw std::invalid_argument("BlockTransform: length mismatch");
    const Eigen::Index b = spec_.block_size;
    const Eigen::Index nb = spec_.n / b;
    Eigen::VectorXd out(spec_.n);
    Eigen::Map<const Eigen::MatrixXd> in_blocks(x.data(), b, nb);
    Eigen::Map<Eigen::MatrixXd> out_blocks(out.data(), b, nb);
    if (spec_.kind == TransformKind::BDCT) {
      if (adjoint)
        out_blocks.noalias() = basis_.transpose() * in_blocks;
      else
        out_blocks.noalias() = basis_ * in_blocks;
    } else {
      // Sylvester-ordered fast Walsh-Hadamard butterfly; the normalized
      // matrix is symmetric, so forward and adjoint coincide.
      out_blocks = in_blocks;
      for (Eigen::Index len = 1; len < b; len <<= 1) {
        for (Eigen::Index i = 0; i < b; i += 2 * len) {
          for (Eigen::Index j = i; j < i + len; ++j) {
            const Eigen::RowVectorXd a = out_blocks.row(j);
            const Eigen::RowVectorXd c = out_blocks.row(j + len);
            out_blocks.row(j) = a + c;
            out_blocks.row(j + len) = a - c;
          }
        }
      }
      out_blocks *= 1.0 / std::sqrt(static_cast<double>(b));
    }
    return out;
  }

  BlockTransformSpec spec_;
  Eigen::MatrixXd basis_;
};

}  // namespace smc
