#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "alns/fe_eval.hpp"
#include "alns/newton.hpp"
#include "alns/problems.hpp"
#include "alns/runner.hpp"

using namespace alns;

namespace {

FlowContext small_cavity(int coarse = 8, int refinements = 1) {
  BenchmarkProblem prob = make_ldc2d(coarse);
  MgConfig mg;
  return FlowContext(MeshHierarchy::build(prob.coarse_mesh(), refinements), Family::P2,
                     prob.dirichlet, prob.neumann_markers, mg);
}

AssemblyOptions cavity_options(double re) {
  AssemblyOptions o;
  o.params.re = re;
  o.params.nu = 2.0 / re;
  o.params.gamma = 1e4;
  o.params.delta_d = 1.0;
  return o;
}

KrylovConfig cavity_krylov() {
  KrylovConfig k;
  k.atol = 1e-10;
  k.rtol = 1e-6;
  k.restart = 100;
  k.max_iterations = 150;
  return k;
}

}  // namespace

TEST_CASE("stokes guess: zero data gives the zero state") {
  BenchmarkProblem prob = make_ldc2d(4);
  prob.dirichlet = {{"x_min", nullptr}, {"x_max", nullptr}, {"y_min", nullptr}, {"y_max", nullptr}};
  MgConfig mg;
  FlowContext ctx(MeshHierarchy::build(prob.coarse_mesh(), 1), Family::P2, prob.dirichlet,
                  prob.neumann_markers, mg);
  DiscreteState state = ctx.zero_state();
  const NewtonReport rep = stokes_initial_guess(ctx, cavity_options(10), cavity_krylov(), state);
  CHECK(rep.converged);
  CHECK(rep.n_steps() == 0);
  CHECK(state.u.norm() == 0.0);
  CHECK(state.p.norm() == 0.0);
}

TEST_CASE("stokes guess on the cavity: global mass conservation and a useful first step") {
  FlowContext ctx = small_cavity();
  DiscreteState state = ctx.zero_state();
  const AssemblyOptions opts = cavity_options(10);
  const NewtonReport rep = stokes_initial_guess(ctx, opts, cavity_krylov(), state);
  CHECK(rep.converged);

  // net boundary flux of the discrete solution
  const MeshLevel& mesh = ctx.fine_mesh();
  double flux = 0.0;
  for (int f = 0; f < mesh.n_facets(); ++f)
    if (mesh.facet_cells[f][1] == -1)
      flux += facet_flux(ctx.fine_umap(), state.u, f, mesh.facet_cells[f][0], 6);
  CHECK(std::abs(flux) <= 1e-10);

  // the stationary residual at the guess is finite and the first Newton step
  // reduces it
  Eigen::VectorXd ru, rp;
  ctx.residual_only(state, opts, ru, rp);
  const double f0 = std::sqrt(ru.squaredNorm() + rp.squaredNorm());
  REQUIRE(std::isfinite(f0));
  NewtonConfig one;
  one.max_iterations = 1;
  DiscreteState s1 = state;
  try {
    newton_solve(ctx, s1, opts, one, cavity_krylov());
  } catch (const NonconvergenceError&) {
    // a single step rarely satisfies the tolerance; the step itself is kept
  }
  ctx.residual_only(s1, opts, ru, rp);
  CHECK(std::sqrt(ru.squaredNorm() + rp.squaredNorm()) < f0);
}

TEST_CASE("newton: a converged state needs zero iterations") {
  FlowContext ctx = small_cavity(4, 1);
  const AssemblyOptions opts = cavity_options(10);
  DiscreteState state = ctx.zero_state();
  ctx.apply_dirichlet_values(state);
  stokes_initial_guess(ctx, opts, cavity_krylov(), state);
  NewtonConfig cfg;
  const NewtonReport first = newton_solve(ctx, state, opts, cfg, cavity_krylov());
  CHECK(first.converged);
  const NewtonReport again = newton_solve(ctx, state, opts, cfg, cavity_krylov());
  CHECK(again.converged);
  CHECK(again.n_steps() == 0);
}

TEST_CASE("newton on the cavity at re 10: few steps, monotone and quadratic") {
  FlowContext ctx = small_cavity();
  const AssemblyOptions opts = cavity_options(10);
  DiscreteState state = ctx.zero_state();
  stokes_initial_guess(ctx, opts, cavity_krylov(), state);
  NewtonConfig cfg;
  const NewtonReport rep = newton_solve(ctx, state, opts, cfg, cavity_krylov());
  CHECK(rep.converged);
  CHECK(rep.n_steps() <= 5);
  for (std::size_t i = 1; i < rep.residuals.size(); ++i)
    CHECK(rep.residuals[i] <= rep.residuals[i - 1] * (1 + 1e-12));
  // quadratic convergence near the solution: |F_(k+1)| / |F_k|^2 bounded over
  // the final two full steps
  if (rep.residuals.size() >= 3) {
    const auto& r = rep.residuals;
    const std::size_t n = r.size();
    for (std::size_t i = n - 2; i < n; ++i) {
      if (r[i - 1] <= 1e-12) continue;
      CHECK(r[i] / (r[i - 1] * r[i - 1]) < 1e4);
    }
  }
}

TEST_CASE("continuation: single-stage plan is a plain newton solve") {
  FlowContext ctx = small_cavity(4, 1);
  ContinuationPlan plan;
  plan.reynolds = {10.0};
  plan.nu_of_re = [](double re) { return 2.0 / re; };
  plan.krylov = cavity_krylov();
  const SolveReport rep = run_continuation(ctx, cavity_options(10), plan);
  CHECK(rep.complete);
  REQUIRE(rep.stages.size() == 2);  // stokes + one stage
  CHECK(rep.stages[0].re == 0.0);
  CHECK(rep.stages[1].re == 10.0);
  CHECK(rep.stages[1].converged);
  // the recorded average equals a recomputation from the raw counts
  const StageReport& s = rep.stages[1];
  int total = 0;
  for (int k : s.outer_per_step) total += k;
  CHECK(s.avg_outer() == doctest::Approx(double(total) / s.newton_steps));
}

TEST_CASE("continuation: [10, 100] completes and is restart-safe") {
  ContinuationPlan plan;
  plan.reynolds = {10.0, 100.0};
  plan.nu_of_re = [](double re) { return 2.0 / re; };
  plan.krylov = cavity_krylov();

  FlowContext ctx = small_cavity();
  DiscreteState final_state;
  const SolveReport rep = run_continuation(ctx, cavity_options(10), plan, &final_state);
  CHECK(rep.complete);
  REQUIRE(rep.stages.size() == 3);
  CHECK(rep.stages[2].converged);

  // re-running the second stage from the recorded predecessor reproduces the
  // iteration counts exactly
  FlowContext ctx2 = small_cavity();
  ContinuationPlan first_only = plan;
  first_only.reynolds = {10.0};
  DiscreteState state10;
  run_continuation(ctx2, cavity_options(10), first_only, &state10);
  FlowContext ctx3 = small_cavity();
  AssemblyOptions opts = cavity_options(100);
  DiscreteState s = state10;
  const NewtonReport redo = newton_solve(ctx3, s, opts, plan.newton, plan.krylov);
  REQUIRE(redo.n_steps() == rep.stages[2].newton_steps);
  for (int i = 0; i < redo.n_steps(); ++i)
    CHECK(redo.steps[i].krylov_iterations == rep.stages[2].outer_per_step[i]);
}

TEST_CASE("continuation: an unreachable stage yields a partial report") {
  FlowContext ctx = small_cavity(4, 1);
  ContinuationPlan plan;
  plan.reynolds = {10.0, 1e6};
  plan.nu_of_re = [](double re) { return 2.0 / re; };
  plan.krylov = cavity_krylov();
  plan.krylov.max_iterations = 8;  // starve the last stage
  plan.newton.max_iterations = 3;
  const SolveReport rep = run_continuation(ctx, cavity_options(10), plan);
  CHECK(!rep.complete);
  REQUIRE(rep.stages.size() >= 2);
  CHECK(rep.stages[1].converged);          // re = 10 fine
  CHECK(!rep.stages.back().converged);     // re = 1e6 fails, recorded
}

TEST_CASE("continuation grids") {
  CHECK(continuation_targets(2, 100) == std::vector<double>{10, 100});
  CHECK(continuation_targets(2, 350) == std::vector<double>{10, 100, 200, 300, 350});
  CHECK(continuation_targets(3, 5000) == std::vector<double>{10, 100, 1000, 2500, 5000});
  CHECK(continuation_targets(3, 10) == std::vector<double>{10});
}
