#pragma once

#include <string>
#include <vector>

#include "alns/newton.hpp"
#include "alns/problems.hpp"

namespace alns {

struct RunOptions {
  std::string benchmark;  // ldc2d | ldc3d | bfs2d | bfs3d | mms3d
  int refinements = 1;
  double re_max = 100.0;
  std::vector<double> gammas;      // default {1e4}
  double delta_d = -1.0;           // <0: dimension default (1 in 2D, 1/20 in 3D)
  Linearization linearization = Linearization::Newton;
  bool bubble_scaling = true;
  std::string element = "p1fb";    // 3D velocity family: p1fb | p2fb
  std::string mesh_file;           // optional coarse mesh override (bfs)
  std::string out_dir = ".";
  int threads = 1;
  unsigned seed = 0;               // recorded only; the solver is deterministic
  int levels = 3;                  // mms: number of mesh levels (h = 1/2, 1/4, ...)
  std::vector<double> re_list;     // mms targets; default {1}
  std::string preconditioner = "al";  // al | simple
};

BenchmarkProblem make_benchmark(const RunOptions& opts);
Family velocity_family_for(const RunOptions& opts, int dim);

/// Reynolds continuation targets ending at re_max: 2D passes through
/// 10, 100, 200, 300, ...; 3D through 10, 100, 1000, 2500, 5000.
std::vector<double> continuation_targets(int dim, double re_max);

ContinuationPlan make_plan(const BenchmarkProblem& prob, const RunOptions& opts, double re_max);
AssemblyOptions make_assembly_options(const BenchmarkProblem& prob, const RunOptions& opts,
                                      double gamma);
FlowContext make_context(const BenchmarkProblem& prob, const RunOptions& opts, int refinements);

/// Runs the benchmark end to end and writes report.csv, timings.csv and (for
/// verification runs) mms.csv into out_dir. Returns the process exit code:
/// zero iff every requested stage converged.
int run_benchmark(const RunOptions& opts, SolveReport* out_report = nullptr);

}  // namespace alns
