#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace smc {

using RowMatrixXd =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct WaveletGeometry {
  Eigen::Index width = 0;
  Eigen::Index height = 0;
  int levels = 1;
};

// Default decomposition depth: log2(min dimension) - 3, at least 1.
inline int default_levels(Eigen::Index width, Eigen::Index height) {
  Eigen::Index d = std::min(width, height);
  int bits = 0;
  while ((Eigen::Index{1} << (bits + 1)) <= d) ++bits;
  return std::max(1, bits - 3);
}

// 2-D multilevel CDF 9/7 transform in lifting form, whole-sample symmetric
// boundary extension, Mallat layout with the approximation band top-left.
// Coefficients travel as the row-major flattening of the arranged matrix.
//
// The synthesis side is biorthogonal (not orthogonal), so the adjoint of the
// synthesis map is exposed separately: it is the elementary lifting steps,
// transposed individually and applied in reverse order. Reconstruction needs
// that exact adjoint, not the analysis transform.
class Wavelet97 {
 public:
  static constexpr double kAlpha = -1.586134342;
  static constexpr double kBeta = -0.052980118;
  static constexpr double kGamma = 0.882911076;
  static constexpr double kDelta = 0.443506852;
  static constexpr double kZeta = 1.149604398;

  explicit Wavelet97(WaveletGeometry g) : geo_(g) {
    if (g.width < 2 || g.height < 2 || g.levels < 1)
      throw std::invalid_argument("Wavelet97: degenerate geometry");
    const Eigen::Index div = Eigen::Index{1} << g.levels;
    if (g.width % div != 0 || g.height % div != 0)
      throw std::invalid_argument(
          "Wavelet97: dimensions must be divisible by 2^levels");
  }

  const WaveletGeometry& geometry() const { return geo_; }
  Eigen::Index size() const { return geo_.width * geo_.height; }

  // Analysis: image matrix (height x width) -> coefficient vector.
  Eigen::VectorXd forward(const Eigen::Ref<const RowMatrixXd>& image) const {
    if (image.rows() != geo_.height || image.cols() != geo_.width)
      throw std::invalid_argument("Wavelet97::forward: dimension mismatch");
    RowMatrixXd work = image;
    for (int l = 0; l < geo_.levels; ++l) {
      auto blk = work.topLeftCorner(geo_.height >> l, geo_.width >> l);
      analyze_cols(blk);
      RowMatrixXd t = blk.transpose();
      analyze_cols(t);
      blk = t.transpose();
    }
    return Eigen::Map<const Eigen::VectorXd>(work.data(), work.size());
  }

  // Synthesis: coefficient vector -> image matrix.
  RowMatrixXd inverse(const Eigen::Ref<const Eigen::VectorXd>& coeffs) const {
    RowMatrixXd work = as_matrix(coeffs);
    for (int l = geo_.levels - 1; l >= 0; --l) {
      auto blk = work.topLeftCorner(geo_.height >> l, geo_.width >> l);
      RowMatrixXd t = blk.transpose();
      synthesize_cols(t);
      blk = t.transpose();
      synthesize_cols(blk);
    }
    return work;
  }

  Eigen::VectorXd inverse_vec(const Eigen::Ref<const Eigen::VectorXd>& coeffs) const {
    RowMatrixXd img = inverse(coeffs);
    return Eigen::Map<const Eigen::VectorXd>(img.data(), img.size());
  }

  // Transpose of the synthesis map (image vector -> coefficient vector).
  Eigen::VectorXd inverse_adjoint(const Eigen::Ref<const Eigen::VectorXd>& imgvec) const {
    RowMatrixXd work = as_matrix(imgvec);
    for (int l = 0; l < geo_.levels; ++l) {
      auto blk = work.topLeftCorner(geo_.height >> l, geo_.width >> l);
      synthesize_transpose_cols(blk);
      RowMatrixXd t = blk.transpose();
      synthesize_transpose_cols(t);
      blk = t.transpose();
    }
    return Eigen::Map<const Eigen::VectorXd>(work.data(), work.size());
  }

 private:
  RowMatrixXd as_matrix(const Eigen::Ref<const Eigen::VectorXd>& v) const {
    if (v.size() != size())
      throw std::invalid_argument("Wavelet97: coefficient length mismatch");
    return Eigen::Map<const RowMatrixXd>(v.data(), geo_.height, geo_.width);
  }

  // One lifting pass over every column of `a` at once; rows of the row-major
  // block are contiguous, so the row arithmetic vectorizes.
  template <typename Block>
  static void analyze_cols(Block&& a) {
    const Eigen::Index nh = a.rows() / 2;
    RowMatrixXd s(nh, a.cols()), d(nh, a.cols());
    for (Eigen::Index i = 0; i < nh; ++i) {
      s.row(i) = a.row(2 * i);
      d.row(i) = a.row(2 * i + 1);
    }
    predict(d, s, kAlpha);
    update(s, d, kBeta);
    predict(d, s, kGamma);
    update(s, d, kDelta);
    s *= kZeta;
    d *= 1.0 / kZeta;
    a.topRows(nh) = s;
    a.bottomRows(nh) = d;
  }

  template <typename Block>
  static void synthesize_cols(Block&& a) {
    const Eigen::Index nh = a.rows() / 2;
    RowMatrixXd s = a.topRows(nh);
    RowMatrixXd d = a.bottomRows(nh);
    s *= 1.0 / kZeta;
    d *= kZeta;
    update(s, d, -kDelta);
    predict(d, s, -kGamma);
    update(s, d, -kBeta);
    predict(d, s, -kAlpha);
    for (Eigen::Index i = 0; i < nh; ++i) {
      a.row(2 * i) = s.row(i);
      a.row(2 * i + 1) = d.row(i);
    }
  }

  template <typename Block>
  static void synthesize_transpose_cols(Block&& a) {
    const Eigen::Index nh = a.rows() / 2;
    RowMatrixXd s(nh, a.cols()), d(nh, a.cols());
    for (Eigen::Index i = 0; i < nh; ++i) {
      s.row(i) = a.row(2 * i);
      d.row(i) = a.row(2 * i + 1);
    }
    predict_t(s, d, -kAlpha);
    update_t(d, s, -kBeta);
    predict_t(s, d, -kGamma);
    update_t(d, s, -kDelta);
    s *= 1.0 / kZeta;
    d *= kZeta;
    a.topRows(nh) = s;
    a.bottomRows(nh) = d;
  }

  // d[i] += c * (s[i] + s[i+1]), right edge reflected onto s[nh-1].
  static void predict(RowMatrixXd& d, const RowMatrixXd& s, double c) {
    const Eigen::Index nh = s.rows();
    for (Eigen::Index i = 0; i + 1 < nh; ++i)
      d.row(i) += c * (s.row(i) + s.row(i + 1));
    d.row(nh - 1) += (2.0 * c) * s.row(nh - 1);
  }

  // s[i] += c * (d[i-1] + d[i]), left edge reflected onto d[0].
  static void update(RowMatrixXd& s, const RowMatrixXd& d, double c) {
    const Eigen::Index nh = s.rows();
    s.row(0) += (2.0 * c) * d.row(0);
    for (Eigen::Index i = 1; i < nh; ++i)
      s.row(i) += c * (d.row(i - 1) + d.row(i));
  }

  // Transpose of predict: s[j] += c * (d[j] + d[j-1]), with the reflected
  // edge contributing an extra c * d[nh-1] to s[nh-1].
  static void predict_t(RowMatrixXd& s, const RowMatrixXd& d, double c) {
    const Eigen::Index nh = s.rows();
    s.row(0) += c * d.row(0);
    for (Eigen::Index j = 1; j < nh; ++j)
      s.row(j) += c * (d.row(j) + d.row(j - 1));
    s.row(nh - 1) += c * d.row(nh - 1);
  }

  // Transpose of update: d[j] += c * (s[j] + s[j+1]), with the reflected
  // edge contributing an extra c * s[0] to d[0].
  static void update_t(RowMatrixXd& d, const RowMatrixXd& s, double c) {
    const Eigen::Index nh = s.rows();
    for (Eigen::Index j = 0; j + 1 < nh; ++j)
      d.row(j) += c * (s.row(j) + s.row(j + 1));
    d.row(nh - 1) += c * s.row(nh - 1);
    d.row(0) += c * s.row(0);
  }

  WaveletGeometry geo_;
};

}  // namespace smc
