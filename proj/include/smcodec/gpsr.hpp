#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace smc {

struct GpsrOptions {
  double tau = 0.0;  // must be > 0 here; callers resolve their own defaults
  int max_iters = 400;
  double rel_tol = 1e-5;
  bool debias = false;
  int debias_max_iters = 60;
  double debias_tol = 1e-6;
};

struct GpsrResult {
  Eigen::VectorXd x;
  int iterations = 0;
  std::vector<double> objective_trace;
};

template <typename Op>
void debias_on_support(const Op& op, const Eigen::VectorXd& y,
                       Eigen::VectorXd& x, const GpsrOptions& opts);

// Minimize 0.5 ||y - A x||^2 + tau ||x||_1 by gradient projection over the
// split x = u - v, u,v >= 0, with Barzilai-Borwein step lengths and an exact
// line search along the projection arc (the objective is quadratic in the
// step, so the minimizing lambda in [0,1] has a closed form and the trace is
// non-increasing).
//
// Op needs: apply(VectorXd) -> VectorXd, apply_adjoint(VectorXd) -> VectorXd,
// rows(), cols().
template <typename Op>
GpsrResult gpsr_solve(const Op& op, const Eigen::VectorXd& y,
                      const GpsrOptions& opts) {
  if (!(opts.tau > 0.0)) throw std::invalid_argument("gpsr: tau must be > 0");
  if (opts.max_iters < 1 || !(opts.rel_tol > 0.0) || opts.rel_tol >= 1.0)
    throw std::invalid_argument("gpsr: bad iteration controls");
  if (y.size() == 0) throw std::invalid_argument("gpsr: empty measurement vector");
  if (!y.allFinite()) throw std::invalid_argument("gpsr: non-finite measurements");
  const Eigen::Index n = op.cols();
  if (op.rows() != y.size()) throw std::invalid_argument("gpsr: dimension mismatch");

  constexpr double kAlphaMin = 1e-30;
  constexpr double kAlphaMax = 1e30;
  const double tau = opts.tau;

  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd resid = y;  // y - A(u - v)
  Eigen::VectorXd grad_s = -op.apply_adjoint(resid);

  GpsrResult result;
  double obj = 0.5 * resid.squaredNorm();
  result.objective_trace.push_back(obj);

  double alpha = 1.0;
  int k = 0;
  for (; k < opts.max_iters; ++k) {
    const Eigen::VectorXd du =
        (u - alpha * (grad_s.array() + tau).matrix()).cwiseMax(0.0) - u;
    const Eigen::VectorXd dv =
        (v - alpha * (tau - grad_s.array()).matrix()).cwiseMax(0.0) - v;
    const double g_dot_d = grad_s.dot(du - dv) + tau * (du.sum() + dv.sum());
    if (g_dot_d >= 0.0) break;  // stationary point of the projected model

    const Eigen::VectorXd a_ds = op.apply(du - dv);
    const double curvature = a_ds.squaredNorm();
    const double lambda =
        curvature > 0.0 ? std::min(1.0, -g_dot_d / curvature) : 1.0;

    u += lambda * du;
    v += lambda * dv;
    resid -= lambda * a_ds;
    grad_s = -op.apply_adjoint(resid);

    const double obj_new =
        0.5 * resid.squaredNorm() + tau * (u.sum() + v.sum());
    result.objective_trace.push_back(obj_new);

    alpha = curvature > 0.0
                ? std::clamp((du.squaredNorm() + dv.squaredNorm()) / curvature,
                             kAlphaMin, kAlphaMax)
                : kAlphaMax;

    const double denom = std::max(std::abs(obj), 1e-300);
    const bool done = std::abs(obj - obj_new) <= opts.rel_tol * denom;
    obj = obj_new;
    if (done) {
      ++k;
      break;
    }
  }
  result.iterations = k;
  result.x = u - v;

  if (opts.debias) debias_on_support(op, y, result.x, opts);
  return result;
}

// Least-squares polish restricted to the recovered support, via CG on the
// normal equations. Skipped when the support is empty or overdetermined the
// wrong way (|support| > #measurements).
template <typename Op>
void debias_on_support(const Op& op, const Eigen::VectorXd& y,
                       Eigen::VectorXd& x, const GpsrOptions& opts) {
  const Eigen::Index n = x.size();
  Eigen::ArrayXd mask(n);
  Eigen::Index support = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    mask[i] = x[i] != 0.0 ? 1.0 : 0.0;
    support += x[i] != 0.0;
  }
  if (support == 0 || support > y.size()) return;

  const auto apply_masked = [&](const Eigen::VectorXd& w) {
    return op.apply((w.array() * mask).matrix());
  };
  const auto adjoint_masked = [&](const Eigen::VectorXd& r) {
    return (op.apply_adjoint(r).array() * mask).matrix().eval();
  };

  Eigen::VectorXd r = adjoint_masked(y - apply_masked(x));
  Eigen::VectorXd p = r;
  double rs = r.squaredNorm();
  const double rs0 = rs;
  if (rs0 == 0.0) return;
  for (int it = 0; it < opts.debias_max_iters; ++it) {
    const Eigen::VectorXd ap = adjoint_masked(apply_masked(p));
    const double p_ap = p.dot(ap);
    if (p_ap <= 0.0) break;
    const double step = rs / p_ap;
    x += step * (p.array() * mask).matrix();
    r -= step * ap;
    const double rs_new = r.squaredNorm();
    if (rs_new <= opts.debias_tol * opts.debias_tol * rs0) break;
    p = r + (rs_new / rs) * p;
    rs = rs_new;
  }
}

}  // namespace smc
