#pragma once

#include <Eigen/Dense>

#include "alns/dofmap.hpp"

namespace alns {

/// Velocity field value at a physical point inside a cell.
std::array<double, 3> eval_velocity(const DofMap& umap, const Eigen::VectorXd& u, int cell,
                                    const double* x);

/// Flux of a velocity field through a facet, with the normal oriented outward
/// with respect to `cell` (which must be adjacent to the facet).
double facet_flux(const DofMap& umap, const Eigen::VectorXd& u, int facet, int cell,
                  int quad_degree = 5);

/// Net boundary flux of a cell: sum of outward facet fluxes.
double cell_boundary_flux(const DofMap& umap, const Eigen::VectorXd& u, int cell,
                          int quad_degree = 5);

/// Index of the first cell in `cells` containing the point (barycentric
/// tolerance 1e-9); -1 if none does.
int locate_cell(const MeshLevel& mesh, const std::vector<int>& cells, const double* x);

}  // namespace alns
