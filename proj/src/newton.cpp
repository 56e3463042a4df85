#include "alns/newton.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "alns/errors.hpp"

namespace alns {

namespace {

int verbosity() {
  const char* v = std::getenv("SOLVER_VERBOSE");
  return v ? std::atoi(v) : 0;
}

double combined_norm(const Eigen::VectorXd& ru, const Eigen::VectorXd& rp) {
  return std::sqrt(ru.squaredNorm() + rp.squaredNorm());
}

double residual_norm_at(FlowContext& ctx, const DiscreteState& state,
                        const AssemblyOptions& opts) {
  Eigen::VectorXd ru, rp;
  ctx.residual_only(state, opts, ru, rp);
  return combined_norm(ru, rp);
}

}  // namespace

SaddlePrecondFactory default_precond_factory() {
  return [](const FlowContext& ctx) {
    const BlockPreconditioner p = ctx.block_preconditioner();
    return SaddlePrecond([p](const Eigen::VectorXd& ru, const Eigen::VectorXd& rp,
                             Eigen::VectorXd& zu, Eigen::VectorXd& zp) { p.apply(ru, rp, zu, zp); });
  };
}

NewtonReport newton_solve(FlowContext& ctx, DiscreteState& state, const AssemblyOptions& opts,
                          const NewtonConfig& ncfg, const KrylovConfig& kcfg,
                          const SaddlePrecondFactory& precond) {
  const SaddlePrecondFactory factory = precond ? precond : default_precond_factory();
  NewtonReport report;
  ctx.assemble(state, opts);
  double fnorm = combined_norm(ctx.system().rhs_u, ctx.system().rhs_p);
  const double f0 = fnorm;
  const double target = std::max(ncfg.atol, ncfg.rtol * f0);
  report.residuals.push_back(fnorm);
  if (verbosity() >= 1) std::fprintf(stderr, "  newton 0: |F| = %.6e\n", fnorm);
  if (fnorm <= target) {
    report.converged = true;
    return report;
  }

  const int nu = ctx.fine_umap().ndofs();
  const int np = ctx.fine_pmap().ndofs();
  while (report.n_steps() < ncfg.max_iterations) {
    LinearSolveResult lin = solve_linearized(ctx.system(), factory(ctx), ctx.enclosed(), kcfg);

    NewtonStep step;
    step.krylov_iterations = lin.iterations;
    step.krylov_history = lin.residual_history;

    // quadratic model of phi(lambda) = 1/2 |F(x + lambda d)|^2 from phi(0),
    // phi(1) and phi'(0) = F . (J d)
    double lambda = 1.0;
    DiscreteState trial = state;
    trial.u += lin.du;
    trial.p += lin.dp;
    double ftrial = residual_norm_at(ctx, trial, opts);
    if (ncfg.line_search) {
      Eigen::VectorXd x(nu + np);
      x.head(nu) = lin.du;
      x.tail(np) = lin.dp;
      const Eigen::VectorXd jd = saddle_apply(ctx.system(), x);
      const double phi0 = 0.5 * fnorm * fnorm;
      const double dphi0 = ctx.system().rhs_u.dot(jd.head(nu)) + ctx.system().rhs_p.dot(jd.tail(np));
      const double phi1 = 0.5 * ftrial * ftrial;
      const double curv = phi1 - phi0 - dphi0;
      if (curv > 0.0) lambda = std::clamp(-dphi0 / (2.0 * curv), 0.1, 1.0);
      if (lambda != 1.0) {
        trial = state;
        trial.u += lambda * lin.du;
        trial.p += lambda * lin.dp;
        ftrial = residual_norm_at(ctx, trial, opts);
      }
      if (ftrial > fnorm) {
        // the model step increased the residual; probe a few fractions
        bool ok = false;
        for (double probe : {1.0, 0.5, 0.25, 0.1}) {
          if (probe == lambda) continue;
          DiscreteState t2 = state;
          t2.u += probe * lin.du;
          t2.p += probe * lin.dp;
          const double f2 = residual_norm_at(ctx, t2, opts);
          if (f2 <= fnorm) {
            lambda = probe;
            trial = std::move(t2);
            ftrial = f2;
            ok = true;
            break;
          }
        }
        if (!ok)
          throw NonconvergenceError("newton_solve: line search failed, no step fraction reduces "
                                    "|F| (last |F| = " + std::to_string(fnorm) + ")",
                                    report.residuals);
      }
    }

    state = std::move(trial);
    fnorm = ftrial;
    step.lambda = lambda;
    step.residual_after = fnorm;
    report.steps.push_back(std::move(step));
    report.residuals.push_back(fnorm);
    if (verbosity() >= 1)
      std::fprintf(stderr, "  newton %d: |F| = %.6e (lambda %.2f, %d krylov)\n", report.n_steps(),
                   fnorm, lambda, lin.iterations);
    if (fnorm <= target) {
      report.converged = true;
      return report;
    }
    if (report.n_steps() < ncfg.max_iterations) ctx.assemble(state, opts);
  }
  throw NonconvergenceError("newton_solve: no convergence in " +
                                std::to_string(ncfg.max_iterations) + " steps",
                            report.residuals);
}

NewtonReport stokes_initial_guess(FlowContext& ctx, AssemblyOptions opts,
                                  const KrylovConfig& kcfg, DiscreteState& state) {
  opts.advection = false;
  opts.supg = false;
  opts.params.gamma = 0.0;
  NewtonConfig ncfg;
  ncfg.max_iterations = 3;  // the problem is linear
  ncfg.atol = std::max(1e-8, kcfg.atol);
  ncfg.rtol = 1e-6;
  ncfg.line_search = false;
  ctx.apply_dirichlet_values(state);
  return newton_solve(ctx, state, opts, ncfg, kcfg);
}

SolveReport run_continuation(FlowContext& ctx, AssemblyOptions opts, const ContinuationPlan& plan,
                             DiscreteState* final_state) {
  for (std::size_t i = 1; i < plan.reynolds.size(); ++i)
    if (!(plan.reynolds[i] > plan.reynolds[i - 1]))
      throw Error("run_continuation: Reynolds targets must be strictly increasing");

  SolveReport report;
  DiscreteState state = ctx.zero_state();
  ctx.apply_dirichlet_values(state);

  auto record = [&report](double re, double gamma, const NewtonReport& nr, double wall) {
    StageReport s;
    s.re = re;
    s.gamma = gamma;
    s.newton_steps = nr.n_steps();
    for (const auto& st : nr.steps) s.outer_per_step.push_back(st.krylov_iterations);
    s.newton_residuals = nr.residuals;
    s.converged = nr.converged;
    s.wall_seconds = wall;
    report.stages.push_back(std::move(s));
  };

  using clock = std::chrono::steady_clock;
  {
    const auto t0 = clock::now();
    try {
      NewtonReport nr = stokes_initial_guess(ctx, opts, plan.krylov, state);
      record(0.0, 0.0, nr, std::chrono::duration<double>(clock::now() - t0).count());
    } catch (const NonconvergenceError& e) {
      if (verbosity() >= 1) std::fprintf(stderr, "stokes guess failed: %s\n", e.what());
      report.complete = false;
      return report;
    }
  }

  for (double re : plan.reynolds) {
    opts.params.re = re;
    opts.params.nu = plan.nu_of_re(re);
    if (verbosity() >= 1)
      std::fprintf(stderr, "stage re = %g (nu = %g)\n", re, opts.params.nu);
    const auto t0 = clock::now();
    try {
      NewtonReport nr = newton_solve(ctx, state, opts, plan.newton, plan.krylov, plan.precond);
      record(re, opts.params.gamma, nr,
             std::chrono::duration<double>(clock::now() - t0).count());
    } catch (const NonconvergenceError& e) {
      if (verbosity() >= 1) std::fprintf(stderr, "stage re = %g failed: %s\n", re, e.what());
      StageReport s;
      s.re = re;
      s.gamma = opts.params.gamma;
      s.converged = false;
      s.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
      report.stages.push_back(std::move(s));
      report.complete = false;
      break;
    }
  }
  if (final_state) *final_state = state;
  return report;
}

}  // namespace alns
