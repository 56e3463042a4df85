#include "alns/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>

#include "alns/errors.hpp"
#include "alns/norms.hpp"

namespace alns {

namespace {

const char* kElementName(Family f, int dim) {
  if (dim == 2) return "[P2]^2-P0";
  return f == Family::P1FacetBubble ? "[P1+FB]^3-P0" : "[P2+FB]^3-P0";
}

}  // namespace

BenchmarkProblem make_benchmark(const RunOptions& opts) {
  if (opts.benchmark == "ldc2d") return make_ldc2d();
  if (opts.benchmark == "ldc3d") return make_ldc3d();
  if (opts.benchmark == "bfs2d")
    return opts.mesh_file.empty() ? make_bfs2d() : make_bfs_from_file(opts.mesh_file, 2);
  if (opts.benchmark == "bfs3d")
    return opts.mesh_file.empty() ? make_bfs3d() : make_bfs_from_file(opts.mesh_file, 3);
  if (opts.benchmark == "mms3d") {
    const double re = opts.re_list.empty() ? 1.0 : opts.re_list.front();
    return make_mms3d(re);
  }
  throw Error("unknown benchmark '" + opts.benchmark + "'");
}

Family velocity_family_for(const RunOptions& opts, int dim) {
  if (dim == 2) return Family::P2;
  if (opts.element == "p1fb") return Family::P1FacetBubble;
  if (opts.element == "p2fb") return Family::P2FacetBubble;
  throw Error("unknown element '" + opts.element + "' (use p1fb or p2fb)");
}

std::vector<double> continuation_targets(int dim, double re_max) {
  std::vector<double> grid;
  if (dim == 2) {
    grid = {10, 100};
    for (double re = 200; re <= 10000; re += 100) grid.push_back(re);
  } else {
    grid = {10, 100, 1000, 2500, 5000};
  }
  std::vector<double> out;
  for (double re : grid)
    if (re < re_max) out.push_back(re);
  out.push_back(re_max);
  return out;
}

ContinuationPlan make_plan(const BenchmarkProblem& prob, const RunOptions& opts, double re_max) {
  ContinuationPlan plan;
  plan.reynolds = continuation_targets(prob.dim, re_max);
  plan.nu_of_re = [u = prob.u_ref, l = prob.l_ref](double re) { return u * l / re; };
  if (prob.dim == 2) {
    plan.newton.atol = 1e-8;
    plan.newton.rtol = 1e-10;
    plan.krylov.atol = 1e-10;
    plan.krylov.rtol = 1e-6;
  } else {
    plan.newton.atol = 1e-8;
    plan.newton.rtol = 1e-8;
    plan.krylov.atol = 1e-8;
    plan.krylov.rtol = 1e-5;
  }
  plan.krylov.restart = 100;
  plan.krylov.max_iterations = opts.preconditioner == "simple" ? 5000 : 150;
  return plan;
}

AssemblyOptions make_assembly_options(const BenchmarkProblem& prob, const RunOptions& opts,
                                      double gamma) {
  AssemblyOptions a;
  a.params.gamma = gamma;
  a.params.delta_d = opts.delta_d >= 0 ? opts.delta_d : (prob.dim == 2 ? 1.0 : 1.0 / 20.0);
  a.linearization = opts.linearization;
  a.body_force = prob.body_force;
  return a;
}

FlowContext make_context(const BenchmarkProblem& prob, const RunOptions& opts, int refinements) {
  MgConfig mg;
  mg.bubble_scaling = opts.bubble_scaling;
  mg.threads = opts.threads;
  const char* verbose = std::getenv("SOLVER_VERBOSE");
  mg.verbosity = verbose ? std::atoi(verbose) : 0;
  MeshHierarchy h = MeshHierarchy::build(prob.coarse_mesh(), refinements);
  return FlowContext(std::move(h), velocity_family_for(opts, prob.dim), prob.dirichlet,
                     prob.neumann_markers, mg);
}

int run_benchmark(const RunOptions& opts, SolveReport* out_report) {
  const BenchmarkProblem prob = make_benchmark(opts);
  std::filesystem::create_directories(opts.out_dir);
  SolveReport report;
  report.benchmark = opts.benchmark;
  report.refinements = opts.refinements;
  report.threads = opts.threads;
  const std::vector<double> gammas = opts.gammas.empty() ? std::vector<double>{1e4} : opts.gammas;

  if (opts.benchmark == "mms3d") {
    report.element = kElementName(velocity_family_for(opts, 3), 3);
    const std::vector<double> res = opts.re_list.empty() ? std::vector<double>{1.0} : opts.re_list;
    bool all_ok = true;
    for (double re : res) {
      const BenchmarkProblem mprob = make_mms3d(re);
      for (double gamma : gammas) {
        for (int level = 0; level < opts.levels; ++level) {
          FlowContext ctx = make_context(mprob, opts, level);
          ContinuationPlan plan = make_plan(mprob, opts, re);
          if (re <= 10.0) plan.reynolds = {re};
          AssemblyOptions aopts = make_assembly_options(mprob, opts, gamma);
          DiscreteState state;
          SolveReport r = run_continuation(ctx, aopts, plan, &state);
          for (auto& s : r.stages) report.stages.push_back(std::move(s));
          all_ok &= r.complete;
          if (r.complete) {
            const MmsSolution& sol = *mprob.exact;
            const ErrorNorms err = compute_error_norms(
                state, ctx.fine_umap(), ctx.fine_pmap(),
                [&sol](const std::array<double, 3>& x) { return sol.velocity(x); },
                [&sol](const std::array<double, 3>& x) { return sol.pressure(x); },
                ctx.fine_umap().spec().degree() + 3);
            MmsRow row;
            row.h = 0.5 / std::pow(2.0, level);
            row.error_v = err.velocity_l2;
            row.error_p = err.pressure_l2;
            row.gamma = gamma;
            row.re = re;
            report.mms_rows.push_back(row);
          }
        }
      }
    }
    report.complete = all_ok;
    write_file(opts.out_dir + "/mms.csv", mms_csv(report.mms_rows));
  } else {
    FlowContext ctx = make_context(prob, opts, opts.refinements);
    report.element = kElementName(velocity_family_for(opts, prob.dim), prob.dim);
    const double gamma = opts.preconditioner == "simple" ? 0.0 : gammas.back();
    AssemblyOptions aopts = make_assembly_options(prob, opts, gamma);
    ContinuationPlan plan = make_plan(prob, opts, opts.re_max);
    if (opts.preconditioner == "simple") {
      plan.precond = [](const FlowContext& c) {
        auto sp = std::make_shared<SimplePreconditioner>(c.system(), c.momentum_vcycle(),
                                                         c.enclosed());
        return SaddlePrecond([sp](const Eigen::VectorXd& ru, const Eigen::VectorXd& rp,
                                  Eigen::VectorXd& zu, Eigen::VectorXd& zp) {
          sp->apply(ru, rp, zu, zp);
        });
      };
    }
    DiscreteState state;
    SolveReport r = run_continuation(ctx, aopts, plan, &state);
    report.stages = std::move(r.stages);
    report.complete = r.complete;

    if (const char* dump = std::getenv("SOLVER_DUMP_BLOCKS"); dump && dump[0] == '1') {
      write_matrix_market(ctx.system().A, opts.out_dir + "/A.mtx");
      write_matrix_market(ctx.system().B, opts.out_dir + "/B.mtx");
    }
  }

  write_file(opts.out_dir + "/report.csv", report.to_csv());
  write_file(opts.out_dir + "/timings.csv", report.timings_csv());
  if (out_report) *out_report = report;
  bool ok = report.complete;
  for (const auto& s : report.stages) ok &= s.converged;
  return ok ? 0 : 1;
}

}  // namespace alns
