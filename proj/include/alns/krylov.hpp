#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace alns {

using LinearOp = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Removes the constant component of a vector segment in the weighted-L2
/// sense: v|seg -= (w . v|seg)/(w . 1). Used for the pressure nullspace of
/// enclosed flows.
struct MeanProjector {
  int offset = 0;
  Eigen::VectorXd weights;
  void project(Eigen::VectorXd& v) const {
    const auto seg = v.segment(offset, weights.size());
    const double mean = weights.dot(seg) / weights.sum();
    v.segment(offset, weights.size()).array() -= mean;
  }
};

struct KrylovConfig {
  int max_iterations = 200;
  int restart = 100;
  double atol = 1e-10;
  double rtol = 1e-6;
  bool flexible = true;
  const MeanProjector* nullspace = nullptr;
};

struct KrylovResult {
  Eigen::VectorXd x;
  std::vector<double> residual_history;  // [0] is the initial residual norm
  int iterations = 0;
  bool converged = false;
};

/// Right-preconditioned GMRES with modified Gram-Schmidt orthogonalization.
/// Stores the preconditioned directions, so an iteration-varying
/// preconditioner (flexible mode) is handled with no extra configuration.
/// Termination: ||r||_2 <= max(atol, rtol*||r0||_2), or the iteration budget.
/// With atol = rtol = 0 it performs exactly max_iterations iterations unless
/// the residual vanishes (happy breakdown).
KrylovResult gmres(const LinearOp& op, const LinearOp* precond, const Eigen::VectorXd& rhs,
                   const Eigen::VectorXd& x0, const KrylovConfig& cfg);

}  // namespace alns
