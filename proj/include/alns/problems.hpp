#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "alns/assembly.hpp"
#include "alns/mesh.hpp"
#include "alns/mms.hpp"

namespace alns {

/// A benchmark: coarse geometry, boundary data per marker, characteristic
/// scales for the Reynolds number, and (for verification runs) the exact
/// fields.
struct BenchmarkProblem {
  std::string name;
  int dim = 2;
  std::function<MeshLevel()> coarse_mesh;
  std::vector<std::pair<std::string, ForceField>> dirichlet;  // marker -> g
  std::vector<std::string> neumann_markers;
  ForceField body_force;  // null = zero
  double u_ref = 1.0;
  double l_ref = 2.0;
  std::optional<MmsSolution> exact;

  bool enclosed() const { return neumann_markers.empty(); }
  double nu_of_re(double re) const { return u_ref * l_ref / re; }
};

/// Lid-driven cavity on [0,2]^2, regularized lid u = (1-(x-1)^4, 0) on y = 2,
/// no-slip elsewhere; coarse grid n x n of negative-slope triangles.
BenchmarkProblem make_ldc2d(int n = 16);

/// Lid-driven cavity on [0,2]^3 with lid u = (x^2(2-x)^2 z^2(2-z)^2, 0, 0) on
/// y = 2; coarse grid n^3 cubes split into six tetrahedra each.
BenchmarkProblem make_ldc3d(int n = 4);

/// Backward-facing step ([0,10]x[1,2]) u ([1,10]x[0,1]), inflow
/// 4(2-y)(y-1) at x = 0, natural outflow at x = 10. `resolution` cells per
/// unit length.
BenchmarkProblem make_bfs2d(int resolution = 1);
// 3D variant (x [0,1] in z) with inflow 4(2-y)(y-1)z(1-z).
BenchmarkProblem make_bfs3d(int resolution = 1);
// Same geometry from a mesh file (markers inflow/outflow/wall).
BenchmarkProblem make_bfs_from_file(const std::string& path, int dim);

/// Manufactured-solution verification problem on [0,2]^3 at the given
/// Reynolds number; Dirichlet data = exact velocity on the whole boundary.
BenchmarkProblem make_mms3d(double re, int n = 4);

}  // namespace alns
