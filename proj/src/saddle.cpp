#include "alns/saddle.hpp"

#include <cmath>

#include "alns/errors.hpp"

namespace alns {

Eigen::VectorXd BlockPreconditioner::schur_inv(const Eigen::VectorXd& rp) const {
  Eigen::VectorXd zp = (-schur_scale) * rp.cwiseQuotient(sys->mp);
  if (enclosed) {
    const double mean = sys->mp.dot(zp) / sys->mp.sum();
    zp.array() -= mean;
  }
  return zp;
}

void BlockPreconditioner::apply(const Eigen::VectorXd& ru, const Eigen::VectorXd& rp,
                                Eigen::VectorXd& zu, Eigen::VectorXd& zp) const {
  switch (mode) {
    case Mode::Diagonal: {
      zu = momentum_inv(ru);
      zp = schur_inv(rp);
      return;
    }
    case Mode::Lower: {
      zu = momentum_inv(ru);
      zp = schur_inv(rp - sys->B.apply(zu));
      return;
    }
    case Mode::Upper: {
      zp = schur_inv(rp);
      zu = momentum_inv(ru - sys->B.apply_transpose(zp));
      return;
    }
    case Mode::FullLdu: {
      const Eigen::VectorXd zu0 = momentum_inv(ru);
      zp = schur_inv(rp - sys->B.apply(zu0));
      zu = zu0 - momentum_inv(sys->B.apply_transpose(zp));
      return;
    }
  }
}

SimplePreconditioner::SimplePreconditioner(const BlockSystem& sys, LinearOp momentum_inv,
                                           bool enclosed)
    : sys_(&sys), momentum_inv_(std::move(momentum_inv)), enclosed_(enclosed) {
  const int nu = sys.A.rows();
  const int np = sys.B.rows();
  diag_inv_.resize(nu);
  for (int i = 0; i < nu; ++i) {
    const double d = sys.A.get(i, i);
    if (d == 0.0) throw SingularMatrixError("SimplePreconditioner: zero diagonal in A");
    diag_inv_[i] = 1.0 / d;
  }

  // columns of B grouped by velocity dof
  std::vector<std::vector<std::pair<int, double>>> cols(nu);
  for (int r = 0; r < np; ++r)
    for (int k = sys.B.row_ptr()[r]; k < sys.B.row_ptr()[r + 1]; ++k)
      if (sys.B.values()[k] != 0.0) cols[sys.B.col_idx()[k]].emplace_back(r, sys.B.values()[k]);

  PatternBuilder pb(np, np);
  for (int j = 0; j < nu; ++j) {
    std::vector<int> rows;
    for (const auto& [r, v] : cols[j]) rows.push_back(r);
    pb.connect(rows, rows);
  }
  surrogate_ = pb.build();
  for (int j = 0; j < nu; ++j)
    for (const auto& [r1, v1] : cols[j])
      for (const auto& [r2, v2] : cols[j]) surrogate_.add(r1, r2, v1 * diag_inv_[j] * v2);

  // For enclosed flow the surrogate annihilates constants; pin the first
  // pressure dof before factorizing and fix the mean on application.
  CsrMatrix pinned = surrogate_;
  if (enclosed_) pinned.eliminate_symmetric({0});
  lu_.factorize(pinned);
}

void SimplePreconditioner::apply(const Eigen::VectorXd& ru, const Eigen::VectorXd& rp,
                                 Eigen::VectorXd& zu, Eigen::VectorXd& zp) const {
  const Eigen::VectorXd zu0 = momentum_inv_(ru);
  Eigen::VectorXd rp1 = rp - sys_->B.apply(zu0);
  if (enclosed_) rp1[0] = 0.0;
  zp = -lu_.solve(rp1);
  if (enclosed_) {
    const double mean = sys_->mp.dot(zp) / sys_->mp.sum();
    zp.array() -= mean;
  }
  zu = zu0 - diag_inv_.cwiseProduct(sys_->B.apply_transpose(zp));
}

Eigen::VectorXd saddle_apply(const BlockSystem& sys, const Eigen::VectorXd& x) {
  const int nu = sys.A.rows();
  const int np = sys.B.rows();
  Eigen::VectorXd y(nu + np);
  const Eigen::VectorXd xu = x.head(nu), xp = x.tail(np);
  y.head(nu) = sys.A.apply(xu) + sys.B.apply_transpose(xp);
  y.tail(np) = sys.B.apply(xu);
  return y;
}

LinearSolveResult solve_linearized(const BlockSystem& sys, const SaddlePrecond& precond,
                                   bool enclosed, const KrylovConfig& cfg) {
  const int nu = sys.A.rows();
  const int np = sys.B.rows();
  Eigen::VectorXd rhs(nu + np);
  rhs.head(nu) = -sys.rhs_u;
  rhs.tail(np) = -sys.rhs_p;

  LinearOp op = [&sys](const Eigen::VectorXd& x) { return saddle_apply(sys, x); };
  LinearOp prec = [&sys, &precond, nu, np](const Eigen::VectorXd& r) {
    Eigen::VectorXd zu, zp;
    precond(r.head(nu), r.tail(np), zu, zp);
    Eigen::VectorXd z(nu + np);
    z.head(nu) = zu;
    z.tail(np) = zp;
    return z;
  };

  KrylovConfig kcfg = cfg;
  MeanProjector proj;
  if (enclosed) {
    proj.offset = nu;
    proj.weights = sys.mp;
    kcfg.nullspace = &proj;
  }
  KrylovResult res = gmres(op, &prec, rhs, Eigen::VectorXd::Zero(nu + np), kcfg);
  if (!res.converged)
    throw NonconvergenceError("solve_linearized: no convergence in " +
                                  std::to_string(res.iterations) + " iterations",
                              res.residual_history);
  LinearSolveResult out;
  out.du = res.x.head(nu);
  out.dp = res.x.tail(np);
  out.iterations = res.iterations;
  out.residual_history = std::move(res.residual_history);
  return out;
}

}  // namespace alns
