#include "alns/norms.hpp"

#include <cmath>

#include "alns/quadrature.hpp"

namespace alns {

ErrorNorms compute_error_norms(const DiscreteState& state, const DofMap& umap, const DofMap& pmap,
                               const VectorField& exact_u, const ScalarField& exact_p,
                               int quad_degree) {
  const MeshLevel& mesh = umap.mesh();
  const int d = mesh.dim;
  const QuadratureRule rule = simplex_quadrature(d, quad_degree);
  ElementSpec scalar = umap.spec();
  scalar.value_size = 1;
  std::vector<BasisEval> ref;
  ref.reserve(rule.size());
  for (int q = 0; q < rule.size(); ++q) {
    std::array<double, 4> lam{0, 0, 0, 0};
    for (int j = 0; j <= d; ++j) lam[j] = rule.points(q, j);
    ref.push_back(eval_basis(scalar, lam.data()));
  }

  double verr2 = 0.0, perr2 = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const int* cd = umap.cell_dofs(c);
    const int* cv = mesh.cell(c);
    const double scale = mesh.cell_volume(c) * (d == 2 ? 2.0 : 6.0);  // detJ
    const double ph = state.p[pmap.cell_dofs(c)[0]];
    for (int q = 0; q < rule.size(); ++q) {
      std::array<double, 3> x{0, 0, 0};
      for (int j = 0; j <= d; ++j)
        for (int k = 0; k < d; ++k) x[k] += rule.points(q, j) * mesh.vertex(cv[j])[k];
      std::array<double, 3> uh{0, 0, 0};
      for (int i = 0; i < umap.dofs_per_cell(); ++i)
        for (int k = 0; k < d; ++k) uh[k] += state.u[umap.global(cd[i], k)] * ref[q].values[i];
      const auto ue = exact_u(x);
      double dv = 0;
      for (int k = 0; k < d; ++k) dv += (uh[k] - ue[k]) * (uh[k] - ue[k]);
      const double w = rule.weights[q] * scale;
      verr2 += w * dv;
      const double dp = ph - exact_p(x);
      perr2 += w * dp * dp;
    }
  }
  return {std::sqrt(verr2), std::sqrt(perr2)};
}

}  // namespace alns
