#include "smcodec/recon.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "smcodec/gpsr.hpp"
#include "smcodec/subsample.hpp"

namespace smc {

namespace {

int resolve_levels(const StreamHeader& h, int levels) {
  return levels > 0 ? levels : default_levels(h.width, h.height);
}

// The encoder's transform-row index for each measurement position.
Eigen::ArrayXi encoder_rows(const StreamHeader& h, const CipherKey& key) {
  const Eigen::Index n = h.n();
  if (h.mode == static_cast<std::uint8_t>(CodecMode::FullRedundancy)) {
    const PermutationMap rp = make_permutation(h.rprime_seed, n);
    return rp.forward;
  }
  std::uint64_t d_seed = h.d_seed;
  if (key.mode == KeyMode::SecretSubsampler) {
    key.validate();
    d_seed = *key.d_seed;
  }
  const SubsampleSelector sel =
      make_subsampler(d_seed, n, static_cast<Eigen::Index>(h.m_count));
  return sel.rows;
}

}  // namespace

EffectiveOperator::EffectiveOperator(
    const StreamHeader& header, const std::vector<std::uint32_t>& received,
    const CipherKey& key, int levels)
    : psi_(WaveletGeometry{header.width, header.height,
                           resolve_levels(header, levels)}),
      r_(make_permutation(key.r_seed, header.n())),
      f_(BlockTransformSpec{header.transform_kind(), header.block_size,
                            header.n()}),
      scale_(header.mode == static_cast<std::uint8_t>(CodecMode::FullRedundancy)
                 ? 1.0
                 : header.measurement_scale()) {
  if (received.empty())
    throw std::invalid_argument("EffectiveOperator: empty received set");
  const Eigen::ArrayXi all_rows = encoder_rows(header, key);
  rows_.resize(static_cast<Eigen::Index>(received.size()));
  for (Eigen::Index j = 0; j < rows_.size(); ++j) {
    const std::uint32_t idx = received[static_cast<std::size_t>(j)];
    if (idx >= header.m_count)
      throw std::invalid_argument("EffectiveOperator: received index range");
    rows_[j] = all_rows[static_cast<Eigen::Index>(idx)];
  }
}

Eigen::VectorXd EffectiveOperator::apply(const Eigen::VectorXd& s) const {
  const Eigen::VectorXd fx =
      f_.forward(apply_permutation(r_, psi_.inverse_vec(s)));
  Eigen::VectorXd out(rows_.size());
  for (Eigen::Index j = 0; j < rows_.size(); ++j)
    out[j] = scale_ * fx[rows_[j]];
  return out;
}

Eigen::VectorXd EffectiveOperator::apply_adjoint(const Eigen::VectorXd& yr) const {
  if (yr.size() != rows_.size())
    throw std::invalid_argument("EffectiveOperator: adjoint length mismatch");
  Eigen::VectorXd z = Eigen::VectorXd::Zero(psi_.size());
  for (Eigen::Index j = 0; j < rows_.size(); ++j)
    z[rows_[j]] += scale_ * yr[j];
  return psi_.inverse_adjoint(apply_inverse_permutation(r_, f_.adjoint(z)));
}

EffectiveOperator build_effective_operator(
    const StreamHeader& header, const std::vector<std::uint32_t>& received,
    const CipherKey& key, int levels) {
  return EffectiveOperator(header, received, key, levels);
}

double psnr(const ImageBuffer& a, const ImageBuffer& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw std::invalid_argument("psnr: dimension mismatch");
  double se = 0.0;
  const std::uint8_t* pa = a.pixels.data();
  const std::uint8_t* pb = b.pixels.data();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(pa[i]) - static_cast<double>(pb[i]);
    se += d * d;
  }
  if (se == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = se / static_cast<double>(a.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

DecodeResult decode_measurements(const StreamHeader& header,
                                 const std::vector<std::uint32_t>& received,
                                 const Eigen::VectorXd& wire_values,
                                 const CipherKey& key,
                                 const SolverOptions& opts,
                                 const ImageBuffer* original) {
  if (received.size() != static_cast<std::size_t>(wire_values.size()))
    throw std::invalid_argument("decode_measurements: index/value mismatch");
  if (received.empty())
    throw std::invalid_argument("decode_measurements: nothing received");
  const Eigen::Index n = header.n();
  DecodeResult result;

  Eigen::VectorXd x_centered(n);
  if (static_cast<Eigen::Index>(received.size()) == n) {
    // Square orthonormal system: invert directly instead of iterating.
    const Eigen::ArrayXi all_rows = encoder_rows(header, key);
    Eigen::VectorXd z(n);
    for (Eigen::Index j = 0; j < n; ++j)
      z[all_rows[static_cast<Eigen::Index>(received[j])]] = wire_values[j];
    const BlockTransform f(
        BlockTransformSpec{header.transform_kind(), header.block_size, n});
    x_centered = f.adjoint(z);
    result.iterations = 0;
  } else {
    const EffectiveOperator theta(header, received, key, opts.levels);
    const Eigen::VectorXd y = header.measurement_scale() * wire_values;
    double tau = opts.tau;
    if (!(tau > 0.0))
      tau = 0.01 * theta.apply_adjoint(y).lpNorm<Eigen::Infinity>();
    GpsrOptions gopts;
    gopts.tau = tau;
    gopts.max_iters = opts.max_iters;
    gopts.rel_tol = opts.rel_tol;
    gopts.debias = opts.debias;
    GpsrResult sol = gpsr_solve(theta, y, gopts);
    result.iterations = sol.iterations;
    result.objective_trace = std::move(sol.objective_trace);
    result.tau_used = tau;
    x_centered = theta.wavelet().inverse_vec(sol.x);
  }

  const PermutationMap r = make_permutation(key.r_seed, n);
  const Eigen::VectorXd x_plain =
      apply_inverse_permutation(r, x_centered).array() + header.mean_mu;
  result.image = image_from_real(x_plain, header.width, header.height);
  if (original) result.psnr_vs_original = psnr(*original, result.image);
  return result;
}

DecodeResult joint_decode(const std::vector<Packet>& packets,
                          const CipherKey& key, const SolverOptions& opts,
                          const ImageBuffer* original) {
  auto [qs, received] = depacketize(packets);
  Eigen::VectorXd values(static_cast<Eigen::Index>(received.size()));
  for (Eigen::Index j = 0; j < values.size(); ++j)
    values[j] =
        static_cast<double>(qs.symbols[received[static_cast<std::size_t>(j)]]) -
        128.0;
  return decode_measurements(qs.header, received, values, key, opts, original);
}

}  // namespace smc
