#pragma once

#include <functional>

#include "alns/context.hpp"
#include "alns/report.hpp"

namespace alns {

struct NewtonConfig {
  double atol = 1e-8;
  double rtol = 1e-10;
  int max_iterations = 25;
  bool line_search = true;  // quadratic model of 1/2 ||F||^2, clamped to [0.1, 1]
};

struct NewtonStep {
  int krylov_iterations = 0;
  std::vector<double> krylov_history;
  double lambda = 1.0;
  double residual_after = 0.0;
};

struct NewtonReport {
  std::vector<NewtonStep> steps;
  std::vector<double> residuals;  // residuals[0] = initial
  bool converged = false;
  int n_steps() const { return static_cast<int>(steps.size()); }
};

/// Builds the preconditioner for one linear solve after the context has been
/// assembled; the returned callable owns whatever state it needs. The default
/// is the full block factorization with one multigrid pass per momentum
/// solve.
using SaddlePrecondFactory = std::function<SaddlePrecond(const FlowContext&)>;
SaddlePrecondFactory default_precond_factory();

/// Newton's method on the assembled system of `ctx`. The state must carry the
/// Dirichlet data on entry; updates vanish on the constrained dofs.
/// Terminates on ||F||_2 <= max(atol, rtol * ||F_0||_2). Line-search failure
/// (no step fraction reduces the residual) and iteration exhaustion raise
/// NonconvergenceError.
NewtonReport newton_solve(FlowContext& ctx, DiscreteState& state, const AssemblyOptions& opts,
                          const NewtonConfig& ncfg, const KrylovConfig& kcfg,
                          const SaddlePrecondFactory& precond = {});

/// Solves the viscous (advection-free, unaugmented) problem to initialize the
/// continuation, with the same block preconditioner built on the multigrid.
NewtonReport stokes_initial_guess(FlowContext& ctx, AssemblyOptions opts,
                                  const KrylovConfig& kcfg, DiscreteState& state);

struct ContinuationPlan {
  std::vector<double> reynolds;  // strictly increasing
  std::function<double(double)> nu_of_re;
  NewtonConfig newton;
  KrylovConfig krylov;
  SaddlePrecondFactory precond;  // null = default block factorization
};

/// Stokes guess, then one Newton solve per Reynolds target, each initialized
/// from its predecessor. A failed stage ends the run; the partial report is
/// returned with complete = false.
SolveReport run_continuation(FlowContext& ctx, AssemblyOptions opts, const ContinuationPlan& plan,
                             DiscreteState* final_state = nullptr);

}  // namespace alns
