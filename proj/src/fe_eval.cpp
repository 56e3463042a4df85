#include "alns/fe_eval.hpp"

#include "alns/errors.hpp"
#include "alns/quadrature.hpp"

namespace alns {

std::array<double, 3> eval_velocity(const DofMap& umap, const Eigen::VectorXd& u, int cell,
                                    const double* x) {
  const MeshLevel& mesh = umap.mesh();
  const int d = mesh.dim;
  const auto lam = mesh.barycentric(cell, x);
  ElementSpec scalar = umap.spec();
  scalar.value_size = 1;
  const BasisEval be = eval_basis(scalar, lam.data());
  const int* cd = umap.cell_dofs(cell);
  std::array<double, 3> val{0, 0, 0};
  for (int i = 0; i < umap.dofs_per_cell(); ++i)
    for (int k = 0; k < d; ++k) val[k] += u[umap.global(cd[i], k)] * be.values[i];
  return val;
}

double facet_flux(const DofMap& umap, const Eigen::VectorXd& u, int facet, int cell,
                  int quad_degree) {
  const MeshLevel& mesh = umap.mesh();
  const int d = mesh.dim;
  const auto n = mesh.facet_normal(facet, cell);
  const double area = mesh.facet_area(facet);
  const QuadratureRule rule = simplex_quadrature(d - 1, quad_degree);
  const double ref_vol = d == 2 ? 1.0 : 0.5;
  const int* fv = mesh.facet(facet);
  double flux = 0;
  for (int q = 0; q < rule.size(); ++q) {
    std::array<double, 3> x{0, 0, 0};
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) x[k] += rule.points(q, j) * mesh.vertex(fv[j])[k];
    const auto val = eval_velocity(umap, u, cell, x.data());
    double un = 0;
    for (int k = 0; k < d; ++k) un += val[k] * n[k];
    flux += rule.weights[q] / ref_vol * area * un;
  }
  return flux;
}

double cell_boundary_flux(const DofMap& umap, const Eigen::VectorXd& u, int cell,
                          int quad_degree) {
  const MeshLevel& mesh = umap.mesh();
  double flux = 0;
  for (int k = 0; k <= mesh.dim; ++k)
    flux += facet_flux(umap, u, mesh.cell_facet_ids(cell)[k], cell, quad_degree);
  return flux;
}

int locate_cell(const MeshLevel& mesh, const std::vector<int>& cells, const double* x) {
  for (int c : cells) {
    const auto lam = mesh.barycentric(c, x);
    bool inside = true;
    for (int j = 0; j <= mesh.dim; ++j) inside &= (lam[j] >= -1e-9);
    if (inside) return c;
  }
  return -1;
}

}  // namespace alns
