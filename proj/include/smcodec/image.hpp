#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>

#include "smcodec/wavelet.hpp"

namespace smc {

using PixelMatrix =
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// 8-bit grayscale image; vectorization is row-major, which both ends of the
// pipeline rely on.
struct ImageBuffer {
  PixelMatrix pixels;

  ImageBuffer() = default;
  ImageBuffer(Eigen::Index width, Eigen::Index height)
      : pixels(PixelMatrix::Zero(height, width)) {}

  Eigen::Index width() const { return pixels.cols(); }
  Eigen::Index height() const { return pixels.rows(); }
  Eigen::Index size() const { return pixels.size(); }

  Eigen::VectorXd as_vector() const {
    return Eigen::Map<const Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>>(
               pixels.data(), pixels.size())
        .cast<double>();
  }

  RowMatrixXd as_matrix() const { return pixels.cast<double>(); }

  // Exact integer mean of the pixel values.
  double mean() const {
    std::uint64_t sum = 0;
    const std::uint8_t* p = pixels.data();
    for (Eigen::Index i = 0; i < pixels.size(); ++i) sum += p[i];
    return static_cast<double>(sum) / static_cast<double>(pixels.size());
  }

  bool operator==(const ImageBuffer& o) const { return pixels == o.pixels; }
};

// Clamp-and-round a real-valued image back to 8 bits.
inline ImageBuffer image_from_real(const Eigen::Ref<const Eigen::VectorXd>& v,
                                   Eigen::Index width, Eigen::Index height) {
  if (v.size() != width * height)
    throw std::invalid_argument("image_from_real: size mismatch");
  ImageBuffer img(width, height);
  std::uint8_t* p = img.pixels.data();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double r = std::round(v[i]);
    p[i] = static_cast<std::uint8_t>(r < 0.0 ? 0.0 : (r > 255.0 ? 255.0 : r));
  }
  return img;
}

}  // namespace smc
