#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "alns/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Stationary incompressible flow solver with an augmented Lagrangian "
               "preconditioner and a kernel-preserving multigrid momentum solver"};
  alns::RunOptions opts;

  app.add_option("benchmark", opts.benchmark, "ldc2d | ldc3d | bfs2d | bfs3d | mms3d")
      ->required();
  app.add_option("--refinements", opts.refinements, "uniform refinements of the coarse grid");
  app.add_option("--re-max", opts.re_max, "final Reynolds number of the continuation");
  app.add_option("--gamma", opts.gammas, "grad-div parameter (repeatable for mms3d)");
  app.add_option("--delta-d", opts.delta_d, "stabilization prefactor (default 1 in 2D, 1/20 in 3D)");
  std::string lin = "newton";
  app.add_option("--linearization", lin, "newton | picard");
  app.add_flag_callback("--no-bubble-scaling", [&] { opts.bubble_scaling = false; },
                        "disable the facet-bubble coefficient scaling in the prolongation");
  app.add_option("--element", opts.element, "3D velocity element: p1fb | p2fb");
  app.add_option("--mesh", opts.mesh_file, "coarse mesh file (bfs benchmarks)");
  app.add_option("--out", opts.out_dir, "output directory for report.csv / timings.csv / mms.csv");
  app.add_option("--threads", opts.threads, "worker threads for local solves");
  app.add_option("--seed", opts.seed, "recorded in no output; runs are deterministic");
  app.add_option("--levels", opts.levels, "mms3d: number of mesh levels (h = 1/2, 1/4, ...)");
  app.add_option("--re", opts.re_list, "mms3d: Reynolds numbers (repeatable)");
  app.add_option("--preconditioner", opts.preconditioner, "al | simple");

  CLI11_PARSE(app, argc, argv);
  if (lin == "picard")
    opts.linearization = alns::Linearization::Picard;
  else if (lin != "newton") {
    std::fprintf(stderr, "unknown linearization '%s'\n", lin.c_str());
    return 2;
  }

  try {
    return alns::run_benchmark(opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
