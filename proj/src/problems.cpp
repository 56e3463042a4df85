#include "alns/problems.hpp"

#include <cmath>

#include "alns/errors.hpp"
#include "alns/mesh_io.hpp"

namespace alns {

namespace {

ForceField zero_velocity() {
  return [](const std::array<double, 3>&) { return std::array<double, 3>{0, 0, 0}; };
}

std::vector<std::array<int, 3>> step_lattice(int res, bool threed) {
  // ([0,10] x [1,2]) u ([1,10] x [0,1]), scaled by the resolution
  std::vector<std::array<int, 3>> cells;
  const int zmax = threed ? res : 1;
  for (int k = 0; k < zmax; ++k)
    for (int j = 0; j < 2 * res; ++j)
      for (int i = 0; i < 10 * res; ++i) {
        const bool top = j >= res;
        const bool bottom = i >= res;
        if (top || bottom) cells.push_back({i, j, k});
      }
  return cells;
}

std::function<std::string(const double*)> step_marker(int res, bool threed) {
  return [res, threed](const double* x) -> std::string {
    const double tol = 1e-9;
    if (std::abs(x[0]) < tol) return "inflow";
    if (std::abs(x[0] - 10.0 * res) < tol) return "outflow";
    (void)threed;
    return "wall";
  };
}

}  // namespace

BenchmarkProblem make_ldc2d(int n) {
  BenchmarkProblem p;
  p.name = "ldc2d";
  p.dim = 2;
  p.coarse_mesh = [n] {
    return build_structured_grid(2, {0, 0, 0}, {2, 2, 0}, {n, n, 1});
  };
  p.dirichlet = {
      {"x_min", zero_velocity()},
      {"x_max", zero_velocity()},
      {"y_min", zero_velocity()},
      {"y_max",
       [](const std::array<double, 3>& x) {
         const double s = x[0] - 1.0;
         return std::array<double, 3>{1.0 - s * s * s * s, 0.0, 0.0};
       }},
  };
  return p;
}

BenchmarkProblem make_ldc3d(int n) {
  BenchmarkProblem p;
  p.name = "ldc3d";
  p.dim = 3;
  p.coarse_mesh = [n] {
    return build_structured_grid(3, {0, 0, 0}, {2, 2, 2}, {n, n, n});
  };
  p.dirichlet = {
      {"x_min", zero_velocity()}, {"x_max", zero_velocity()}, {"y_min", zero_velocity()},
      {"z_min", zero_velocity()}, {"z_max", zero_velocity()},
      {"y_max",
       [](const std::array<double, 3>& x) {
         const double a = x[0] * (2.0 - x[0]);
         const double b = x[2] * (2.0 - x[2]);
         return std::array<double, 3>{a * a * b * b, 0.0, 0.0};
       }},
  };
  return p;
}

BenchmarkProblem make_bfs2d(int resolution) {
  BenchmarkProblem p;
  p.name = "bfs2d";
  p.dim = 2;
  p.coarse_mesh = [resolution] {
    return build_lattice_grid(2, step_lattice(resolution, false), {0, 0, 0},
                              1.0 / resolution, step_marker(resolution, false));
  };
  p.dirichlet = {
      {"wall", zero_velocity()},
      {"inflow",
       [](const std::array<double, 3>& x) {
         return std::array<double, 3>{4.0 * (2.0 - x[1]) * (x[1] - 1.0), 0.0, 0.0};
       }},
  };
  p.neumann_markers = {"outflow"};
  return p;
}

BenchmarkProblem make_bfs3d(int resolution) {
  BenchmarkProblem p;
  p.name = "bfs3d";
  p.dim = 3;
  p.coarse_mesh = [resolution] {
    return build_lattice_grid(3, step_lattice(resolution, true), {0, 0, 0},
                              1.0 / resolution, step_marker(resolution, true));
  };
  p.dirichlet = {
      {"wall", zero_velocity()},
      {"inflow",
       [](const std::array<double, 3>& x) {
         return std::array<double, 3>{
             4.0 * (2.0 - x[1]) * (x[1] - 1.0) * x[2] * (1.0 - x[2]), 0.0, 0.0};
       }},
  };
  p.neumann_markers = {"outflow"};
  return p;
}

BenchmarkProblem make_bfs_from_file(const std::string& path, int dim) {
  BenchmarkProblem p = dim == 2 ? make_bfs2d() : make_bfs3d();
  p.coarse_mesh = [path, dim] {
    MeshLevel m = load_mesh(path);
    if (m.dim != dim) throw Error("mesh file dimension does not match benchmark");
    for (const char* name : {"inflow", "outflow", "wall"})
      if (m.marker_id(name) < 0) throw Error(std::string("mesh file lacks marker ") + name);
    return m;
  };
  return p;
}

BenchmarkProblem make_mms3d(double re, int n) {
  BenchmarkProblem p;
  p.name = "mms3d";
  p.dim = 3;
  p.coarse_mesh = [n] {
    return build_structured_grid(3, {0, 0, 0}, {2, 2, 2}, {n, n, n});
  };
  const MmsSolution sol = mms_exact(re);
  const ForceField g = [sol](const std::array<double, 3>& x) { return sol.velocity(x); };
  for (const char* m : {"x_min", "x_max", "y_min", "y_max", "z_min", "z_max"})
    p.dirichlet.emplace_back(m, g);
  p.body_force = [sol](const std::array<double, 3>& x) { return sol.body_force(x); };
  p.exact = sol;
  p.u_ref = 1.0;
  p.l_ref = 1.0;  // nu = 1/re
  return p;
}

}  // namespace alns
