#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace smc {

struct MomentSummary {
  double mean = 0.0;
  double stddev = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  bool degenerate = false;  // constant input: higher moments undefined
};

struct HistogramResult {
  std::vector<std::int64_t> counts;
  double limit = 0.0;  // bins cover the symmetric range [-limit, limit]
  MomentSummary moments;
};

inline MomentSummary moment_summary(const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (y.size() < 2)
    throw std::invalid_argument("moment_summary: need at least 2 samples");
  MomentSummary s;
  const double n = static_cast<double>(y.size());
  s.mean = y.mean();
  const Eigen::ArrayXd c = y.array() - s.mean;
  const double m2 = c.square().mean();
  s.stddev = std::sqrt(m2);
  if (m2 == 0.0) {
    s.degenerate = true;
    return s;
  }
  const double m3 = c.cube().mean();
  const double m4 = c.square().square().mean();
  s.skewness = m3 / std::pow(m2, 1.5);
  s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  (void)n;
  return s;
}

// Equal-width histogram over [-limit, limit] with limit = max(ceil(max|y|), 1).
inline HistogramResult measurement_histogram(
    const Eigen::Ref<const Eigen::VectorXd>& y, int bins) {
  if (bins < 1) throw std::invalid_argument("measurement_histogram: bins < 1");
  HistogramResult h;
  h.moments = moment_summary(y);
  h.limit = std::max(1.0, std::ceil(y.cwiseAbs().maxCoeff()));
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  const double width = 2.0 * h.limit / bins;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    auto b = static_cast<Eigen::Index>((y[i] + h.limit) / width);
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

// Fraction of samples with |y_i| <= bound.
inline double fraction_within(const Eigen::Ref<const Eigen::VectorXd>& y,
                              double bound) {
  Eigen::Index inside = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    inside += std::abs(y[i]) <= bound;
  return static_cast<double>(inside) / static_cast<double>(y.size());
}

}  // namespace smc
