#pragma once

#include <Eigen/Dense>
#include <functional>

#include "alns/assembly.hpp"
#include "alns/direct.hpp"
#include "alns/krylov.hpp"

namespace alns {

/// Block factorization preconditioner for the saddle system
/// [A_g B^T; B 0]. The Schur complement inverse is approximated by
/// -(nu+gamma) M_p^{-1}, exact to apply since the pressure mass matrix is
/// diagonal. The momentum action is pluggable (one full multigrid pass in
/// production, exact solves in tests).
struct BlockPreconditioner {
  enum class Mode { FullLdu, Diagonal, Lower, Upper };

  LinearOp momentum_inv;
  const BlockSystem* sys = nullptr;
  double schur_scale = 0.0;  // nu + gamma
  bool enclosed = false;     // project pressure output to mean zero
  Mode mode = Mode::FullLdu;

  void apply(const Eigen::VectorXd& ru, const Eigen::VectorXd& rp, Eigen::VectorXd& zu,
             Eigen::VectorXd& zp) const;
  Eigen::VectorXd schur_inv(const Eigen::VectorXd& rp) const;
};

/// Pressure-correction preconditioner used for runtime comparisons. Built on
/// the un-augmented system (gamma = 0): the Schur surrogate is
/// -B diag(A)^{-1} B^T, factorized directly; the momentum action defaults to
/// one multigrid V-cycle.
class SimplePreconditioner {
 public:
  SimplePreconditioner(const BlockSystem& sys, LinearOp momentum_inv, bool enclosed);

  void apply(const Eigen::VectorXd& ru, const Eigen::VectorXd& rp, Eigen::VectorXd& zu,
             Eigen::VectorXd& zp) const;
  const CsrMatrix& schur_surrogate() const { return surrogate_; }

 private:
  const BlockSystem* sys_;
  LinearOp momentum_inv_;
  bool enclosed_;
  Eigen::VectorXd diag_inv_;
  CsrMatrix surrogate_;  // B diag(A)^{-1} B^T (sign applied on use)
  SparseLu lu_;
};

using SaddlePrecond = std::function<void(const Eigen::VectorXd&, const Eigen::VectorXd&,
                                         Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Applies the monolithic saddle operator (A zu + B^T zp, B zu).
Eigen::VectorXd saddle_apply(const BlockSystem& sys, const Eigen::VectorXd& x);

struct LinearSolveResult {
  Eigen::VectorXd du, dp;
  int iterations = 0;
  std::vector<double> residual_history;
};

/// Solves the linearized saddle system for the Newton update with flexible
/// GMRES, right-preconditioned; rhs is the negated residual carried by the
/// system. For enclosed flows the constant-pressure component is projected
/// out of every preconditioned direction and of the result. Throws
/// NonconvergenceError (with the residual history) on budget exhaustion.
LinearSolveResult solve_linearized(const BlockSystem& sys, const SaddlePrecond& precond,
                                   bool enclosed, const KrylovConfig& cfg);

}  // namespace alns
