#include "alns/krylov.hpp"

#include <cmath>

#include "alns/errors.hpp"

namespace alns {

namespace {

// Solves the small upper-triangular system from the Givens-rotated Hessenberg
// matrix and forms x = x0 + Z y.
Eigen::VectorXd form_solution(const Eigen::VectorXd& x0, const std::vector<Eigen::VectorXd>& Z,
                              const Eigen::MatrixXd& R, const Eigen::VectorXd& g, int k) {
  Eigen::VectorXd y(k);
  for (int i = k - 1; i >= 0; --i) {
    double s = g[i];
    for (int j = i + 1; j < k; ++j) s -= R(i, j) * y[j];
    if (R(i, i) == 0.0)
      throw SingularMatrixError("gmres: zero pivot in Hessenberg least-squares solve");
    y[i] = s / R(i, i);
  }
  Eigen::VectorXd x = x0;
  for (int j = 0; j < k; ++j) x += y[j] * Z[j];
  return x;
}

}  // namespace

KrylovResult gmres(const LinearOp& op, const LinearOp* precond, const Eigen::VectorXd& rhs,
                   const Eigen::VectorXd& x0, const KrylovConfig& cfg) {
  const int n = static_cast<int>(rhs.size());
  KrylovResult res;
  res.x = x0.size() ? x0 : Eigen::VectorXd::Zero(n);

  Eigen::VectorXd r = rhs - op(res.x);
  double rnorm = r.norm();
  res.residual_history.push_back(rnorm);
  const double target = std::max(cfg.atol, cfg.rtol * rnorm);
  if (rnorm <= target) {
    res.converged = true;
    return res;
  }

  const int m = std::max(1, cfg.restart);
  std::vector<Eigen::VectorXd> V, Z;
  Eigen::MatrixXd H(m + 1, m);
  Eigen::VectorXd g(m + 1), cs(m), sn(m);

  bool happy = false;
  while (res.iterations < cfg.max_iterations) {
    V.clear();
    Z.clear();
    V.push_back(r / rnorm);
    g.setZero();
    g[0] = rnorm;
    int k = 0;

    for (; k < m && res.iterations < cfg.max_iterations; ++k) {
      Eigen::VectorXd z = precond ? (*precond)(V[k]) : V[k];
      if (cfg.nullspace) cfg.nullspace->project(z);
      Z.push_back(std::move(z));
      Eigen::VectorXd w = op(Z[k]);

      // Modified Gram-Schmidt, single pass.
      for (int i = 0; i <= k; ++i) {
        H(i, k) = V[i].dot(w);
        w -= H(i, k) * V[i];
      }
      H(k + 1, k) = w.norm();
      happy = H(k + 1, k) <= 1e-300;
      if (!happy) V.push_back(w / H(k + 1, k));

      // Apply the accumulated rotations, then a new one for row k+1.
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
        H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
        H(i, k) = t;
      }
      const double denom = std::hypot(H(k, k), H(k + 1, k));
      if (denom == 0.0) throw SingularMatrixError("gmres: breakdown with zero Hessenberg column");
      cs[k] = H(k, k) / denom;
      sn[k] = H(k + 1, k) / denom;
      H(k, k) = denom;
      H(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] *= cs[k];

      ++res.iterations;
      rnorm = std::abs(g[k + 1]);
      res.residual_history.push_back(rnorm);
      if (rnorm <= target || happy) {
        ++k;
        break;
      }
    }

    res.x = form_solution(res.x, Z, H, g, k);
    if (rnorm <= target || happy) {
      res.converged = true;
      if (cfg.nullspace) cfg.nullspace->project(res.x);
      return res;
    }
    if (res.iterations >= cfg.max_iterations) break;
    r = rhs - op(res.x);
    rnorm = r.norm();
    if (rnorm <= target) {  // restart round-off can land us under the target
      res.converged = true;
      if (cfg.nullspace) cfg.nullspace->project(res.x);
      return res;
    }
  }
  if (cfg.nullspace) cfg.nullspace->project(res.x);
  // Fixed-work mode (atol = rtol = 0) is a normal exit, not a failure.
  res.converged = false;
  return res;
}

}  // namespace alns
