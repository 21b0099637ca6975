#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <functional>

namespace framescope::detail {

struct LmOutcome {
  Eigen::VectorXd params;
  double objective = 0.0;  // sum of squared residuals at params
};

// Damped Gauss-Newton (Levenberg) for small zero-residual least-squares
// problems.  eval fills r(p) and its Jacobian.  Gauge freedoms (global
// phases) make J^T J singular; the damping term absorbs them.
inline LmOutcome lm_minimize(
    Eigen::VectorXd p,
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&,
                             Eigen::MatrixXd&)>& eval,
    int max_iters, double f_stop) {
  Eigen::VectorXd r;
  Eigen::MatrixXd j;
  eval(p, r, j);
  double f = r.squaredNorm();
  double lambda = 1e-3;
  for (int it = 0; it < max_iters && f > f_stop; ++it) {
    const Eigen::MatrixXd h = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::MatrixXd damped = h;
      damped.diagonal().array() += lambda;
      const Eigen::VectorXd delta = damped.ldlt().solve(-g);
      const Eigen::VectorXd q = p + delta;
      Eigen::VectorXd rq;
      Eigen::MatrixXd jq;
      eval(q, rq, jq);
      const double fq = rq.squaredNorm();
      if (fq < f) {
        p = q;
        r = rq;
        j = jq;
        f = fq;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 5.0;
      if (lambda > 1e14) break;
    }
    if (!stepped) break;
  }
  return {p, f};
}

}  // namespace framescope::detail
